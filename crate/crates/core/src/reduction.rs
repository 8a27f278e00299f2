use std::sync::Arc;

use crate::error::Result;

type Map<A, B> = Arc<dyn Fn(&A) -> Result<B> + Send + Sync>;

/// A reduction's target instance together with its two solution maps.
///
/// `pull_back` turns a solution of the target into a solution of the source;
/// `push_forward` goes the other way. On valid solutions
/// `pull_back(push_forward(s)) == s`.
pub struct Reduction<Target, SrcSol, TgtSol> {
    pub target: Target,
    pull: Map<TgtSol, SrcSol>,
    push: Map<SrcSol, TgtSol>,
}

impl<Target, SrcSol, TgtSol> Clone for Reduction<Target, SrcSol, TgtSol>
where
    Target: Clone,
{
    fn clone(&self) -> Self {
        Reduction {
            target: self.target.clone(),
            pull: self.pull.clone(),
            push: self.push.clone(),
        }
    }
}

impl<Target, SrcSol: 'static, TgtSol: 'static> Reduction<Target, SrcSol, TgtSol> {
    pub fn new(
        target: Target,
        pull_back: impl Fn(&TgtSol) -> Result<SrcSol> + Send + Sync + 'static,
        push_forward: impl Fn(&SrcSol) -> Result<TgtSol> + Send + Sync + 'static,
    ) -> Self {
        Reduction {
            target,
            pull: Arc::new(pull_back),
            push: Arc::new(push_forward),
        }
    }

    pub fn pull_back(&self, solution: &TgtSol) -> Result<SrcSol> {
        (self.pull)(solution)
    }

    pub fn push_forward(&self, solution: &SrcSol) -> Result<TgtSol> {
        (self.push)(solution)
    }

    /// Pull-back map detached from the target instance.
    pub fn pull_back_fn(&self) -> impl Fn(&TgtSol) -> Result<SrcSol> + Send + Sync + 'static {
        let pull = self.pull.clone();
        move |s| pull(s)
    }

    /// Chains `self: A -> B` with `next: B -> C` into `A -> C`.
    pub fn then<Next, NextSol: 'static>(
        self,
        next: Reduction<Next, TgtSol, NextSol>,
    ) -> Reduction<Next, SrcSol, NextSol> {
        let (pull_ab, push_ab) = (self.pull, self.push);
        let (pull_bc, push_bc) = (next.pull, next.push);
        Reduction {
            target: next.target,
            pull: Arc::new(move |c| pull_ab(&pull_bc(c)?)),
            push: Arc::new(move |a| push_bc(&push_ab(a)?)),
        }
    }

    pub fn map_target<U>(self, f: impl FnOnce(Target) -> U) -> Reduction<U, SrcSol, TgtSol> {
        Reduction {
            target: f(self.target),
            pull: self.pull,
            push: self.push,
        }
    }
}

impl<Target: std::fmt::Debug, S, T> std::fmt::Debug for Reduction<Target, S, T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Reduction").field("target", &self.target).finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_chains_both_maps() {
        let double = Reduction::new((), |x: &i64| Ok(x / 2), |x: &i64| Ok(x * 2));
        let shift = Reduction::new("t", |x: &i64| Ok(x - 3), |x: &i64| Ok(x + 3));
        let both = double.then(shift);
        assert_eq!(both.target, "t");
        assert_eq!(both.push_forward(&5).unwrap(), 13);
        assert_eq!(both.pull_back(&13).unwrap(), 5);
    }
}
