//! Lifts of maps to a split space `g ⊕ V` and the bidegree grading.
//!
//! A cochain on the split space is homogeneous of bidegree `l|k`
//! (with `l + k = 2·weight`) when arguments containing `l+1` base and `k`
//! fiber indices map into the base, arguments with `l` base and `k+1`
//! fiber indices map into the fiber, and everything else maps to zero.
//! The bidegree is additive under the graded bracket, which is what makes
//! coefficient coboundaries well defined.

use crate::cochain::{pair_list, Cochain, Idx, PreCochain};
use crate::scalar::Scalar;
use crate::three_lie::Representation;

/// The splitting `g ⊕ V`: base indices `0..base`, fiber indices
/// `base..base+fiber`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitDims {
    pub base: usize,
    pub fiber: usize,
}

impl SplitDims {
    pub fn total(&self) -> usize {
        self.base + self.fiber
    }

    pub fn is_base(&self, i: Idx) -> bool {
        (i as usize) < self.base
    }

    pub fn embed_base(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.base);
        let mut out = v.to_vec();
        out.extend(std::iter::repeat_n(Scalar::zero(), self.fiber));
        out
    }

    pub fn embed_fiber(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.fiber);
        let mut out = vec![Scalar::zero(); self.base];
        out.extend(v.iter().cloned());
        out
    }

    pub fn base_part(&self, v: &[Scalar]) -> Vec<Scalar> {
        v[..self.base].to_vec()
    }

    pub fn fiber_part(&self, v: &[Scalar]) -> Vec<Scalar> {
        v[self.base..].to_vec()
    }
}

/// Lift of a bracket on the base: arguments from the base, value embedded
/// in the base, zero elsewhere.
pub fn lift_bracket(bracket: &Cochain, dims: SplitDims) -> Cochain {
    assert_eq!(bracket.ambient_dim(), dims.base);
    assert_eq!(bracket.target_dim(), dims.base);
    let mut pre = PreCochain::zero(bracket.weight(), dims.total(), dims.total());
    for (key, value) in bracket.pre().iter_sorted() {
        pre.set_entry(key, dims.embed_base(value));
    }
    Cochain::from_pre(pre).expect("lift of an admissible cochain stays admissible")
}

/// Lift of a representation action: the fully skew trilinear map sending
/// `(x, y, u)` with `x,y` in the base and `u` in the fiber to the action
/// of the pair on `u`, and everything else to zero.
pub fn lift_rep(rep: &Representation, dims: SplitDims) -> Cochain {
    assert_eq!(rep.algebra_dim(), dims.base);
    assert_eq!(rep.module_dim(), dims.fiber);
    let mut terms = Vec::new();
    for (a, b) in pair_list(dims.base) {
        for u in 0..dims.fiber {
            let mut unit = vec![Scalar::zero(); dims.fiber];
            unit[u] = Scalar::one();
            let action = rep.apply_basis(a, b, &unit);
            if action.iter().all(Scalar::is_zero) {
                continue;
            }
            let fiber_idx = (dims.base + u) as Idx;
            terms.push((vec![], (a, b, fiber_idx), dims.embed_fiber(&action)));
        }
    }
    Cochain::from_triple_terms(1, dims.total(), dims.total(), terms)
        .expect("representation lift is fully skew by construction")
}

/// Lift of a fiber-valued cochain with base arguments: nonzero only on
/// all-base argument tuples, value embedded in the fiber.
pub fn lift_cochain(f: &PreCochain, dims: SplitDims) -> PreCochain {
    assert_eq!(f.ambient_dim(), dims.base);
    assert_eq!(f.target_dim(), dims.fiber);
    let mut pre = PreCochain::zero(f.weight(), dims.total(), dims.total());
    for (key, value) in f.iter_sorted() {
        pre.set_entry(key, dims.embed_fiber(value));
    }
    pre
}

/// Outcome of a bidegree scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bidegree {
    /// The zero map is homogeneous of every bidegree.
    Zero,
    /// Homogeneous of bidegree `l|k` with `l + k = 2·weight`.
    Homogeneous(i64, i64),
    /// Not homogeneous.
    Mixed,
}

/// Determines the bidegree of a cochain on a split space by scanning its
/// stored entries.
pub fn bidegree(c: &PreCochain, dims: SplitDims) -> Bidegree {
    assert_eq!(c.ambient_dim(), dims.total());
    assert_eq!(c.target_dim(), dims.total());
    let mut candidate: Option<(i64, i64)> = None;
    for (key, value) in c.iter_sorted() {
        let base_args = key.iter().filter(|&&i| dims.is_base(i)).count() as i64;
        let fiber_args = key.len() as i64 - base_args;
        let base_val = !c_slice_zero(&dims.base_part(value));
        let fiber_val = !c_slice_zero(&dims.fiber_part(value));
        let mut record = |lk: (i64, i64)| -> bool {
            match candidate {
                None => {
                    candidate = Some(lk);
                    true
                }
                Some(prev) => prev == lk,
            }
        };
        if base_val && !record((base_args - 1, fiber_args)) {
            return Bidegree::Mixed;
        }
        if fiber_val && !record((base_args, fiber_args - 1)) {
            return Bidegree::Mixed;
        }
    }
    match candidate {
        None => Bidegree::Zero,
        Some((l, k)) => {
            if l + k == 2 * c.weight() as i64 {
                Bidegree::Homogeneous(l, k)
            } else {
                Bidegree::Mixed
            }
        }
    }
}

fn c_slice_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::Cochain;
    use crate::linalg::Matrix;
    use crate::three_lie::ThreeLieAlgebra;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn example_algebra() -> ThreeLieAlgebra {
        ThreeLieAlgebra::from_triple_terms(4, [( (0, 1, 2), vec![(0, s(1))] )]).unwrap()
    }

    #[test]
    fn bracket_lift_has_bidegree_two_zero() {
        let alg = example_algebra();
        let dims = SplitDims { base: 4, fiber: 4 };
        let lifted = lift_bracket(alg.bracket(), dims);
        assert_eq!(bidegree(lifted.pre(), dims), Bidegree::Homogeneous(2, 0));
    }

    #[test]
    fn rep_lift_has_bidegree_two_zero_and_matches_the_action() {
        let alg = example_algebra();
        let rep = Representation::adjoint(&alg);
        let dims = SplitDims { base: 4, fiber: 4 };
        let lifted = lift_rep(&rep, dims);
        assert_eq!(bidegree(lifted.pre(), dims), Bidegree::Homogeneous(2, 0));
        // evaluated on (e1, e2, u) the lift acts by the pair (e1,e2) on u
        for u in 0..4u8 {
            let got = lifted.eval(&[0, 1, 4 + u]);
            let mut unit = vec![Scalar::zero(); 4];
            unit[u as usize] = Scalar::one();
            let expected = dims.embed_fiber(&rep.apply_basis(0, 1, &unit));
            assert_eq!(got, expected);
        }
        // three fiber arguments go to zero
        assert!(lifted.eval(&[4, 5, 6]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn cochain_lift_has_fiber_valued_bidegree() {
        // weight-1 fiber-valued cochain lifts to bidegree 3|-1
        let dims = SplitDims { base: 3, fiber: 2 };
        let f = Cochain::from_triple_terms(1, 3, 2, [(vec![], (0, 1, 2), vec![s(1), s(2)])])
            .unwrap();
        let lifted = lift_cochain(f.pre(), dims);
        assert_eq!(bidegree(&lifted, dims), Bidegree::Homogeneous(3, -1));
        // weight-0: bidegree 1|-1
        let g = Cochain::from_linear_map(&[vec![s(1), s(0)], vec![s(0), s(0)], vec![s(0), s(3)]], 2);
        let lifted0 = lift_cochain(g.pre(), dims);
        assert_eq!(bidegree(&lifted0, dims), Bidegree::Homogeneous(1, -1));
    }

    #[test]
    fn inhomogeneous_map_is_detected() {
        let dims = SplitDims { base: 2, fiber: 1 };
        let mut pre = PreCochain::zero(0, 3, 3);
        // e0 -> e0 (base to base: 0|0) and e2 -> e0 (fiber to base: 1|-1)
        pre.set_entry(&[0], vec![s(1), s(0), s(0)]);
        pre.set_entry(&[2], vec![s(1), s(0), s(0)]);
        assert_eq!(bidegree(&pre, dims), Bidegree::Mixed);
    }

    #[test]
    fn zero_map_reports_zero() {
        let dims = SplitDims { base: 2, fiber: 1 };
        let pre = PreCochain::zero(1, 3, 3);
        assert_eq!(bidegree(&pre, dims), Bidegree::Zero);
    }

    #[test]
    fn lift_over_a_zero_fiber_is_the_bracket_itself() {
        let alg = example_algebra();
        let dims = SplitDims { base: 4, fiber: 0 };
        let lifted = lift_bracket(alg.bracket(), dims);
        assert_eq!(&lifted, alg.bracket());
    }

    #[test]
    fn identity_endomorphism_is_zero_zero() {
        let dims = SplitDims { base: 2, fiber: 2 };
        let id = crate::bracket::endo_cochain(&Matrix::identity(4));
        assert_eq!(bidegree(id.pre(), dims), Bidegree::Homogeneous(0, 0));
    }
}
