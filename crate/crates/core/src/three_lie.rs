//! Single 3-Lie algebras: validation, representations, semidirect
//! products, coefficient coboundaries with their cohomology, and the
//! Nijenhuis machinery (torsion, deformed brackets).

use crate::bracket::{endo_cochain, nr_bracket, nr_bracket_eval};
use crate::cochain::{
    admissible_dim, admissible_keys, raw_dim, triple_list, Cochain,
    CochainError, Idx, PreCochain,
};
use crate::linalg::{quotient_dim, LinalgError, Matrix};
use crate::scalar::{parity_sign, Scalar};
use crate::split::{lift_bracket, lift_cochain, lift_rep, SplitDims};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, thiserror::Error)]
pub enum ThreeLieError {
    #[error("two evaluation paths disagree in {operation} at {args:?}: {detail}")]
    PathDisagreement {
        operation: &'static str,
        args: Vec<Idx>,
        detail: String,
    },
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Invalid(String),
}

/// A 3-Lie algebra candidate: a skew trilinear bracket given by structure
/// constants. The Fundamental Identity is validated, never assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeLieAlgebra {
    dim: usize,
    bracket: Cochain,
}

/// One Fundamental Identity failure: the basis tuple together with the
/// exact values of both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiViolation {
    /// (x1,..,x5), 0-based basis indices
    pub args: [Idx; 5],
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiReport {
    pub violations: Vec<FiViolation>,
}

impl FiReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl ThreeLieAlgebra {
    pub fn new(dim: usize, bracket: Cochain) -> Result<Self, ThreeLieError> {
        if bracket.weight() != 1 || bracket.ambient_dim() != dim || bracket.target_dim() != dim {
            return Err(ThreeLieError::Invalid(format!(
                "bracket must be a weight-1 self-coefficient cochain on dimension {dim}"
            )));
        }
        Ok(ThreeLieAlgebra { dim, bracket })
    }

    /// Zero bracket.
    pub fn abelian(dim: usize) -> Self {
        ThreeLieAlgebra {
            dim,
            bracket: Cochain::zero(1, dim, dim),
        }
    }

    /// Builds from sparse structure constants on ascending triples.
    pub fn from_triple_terms<I>(dim: usize, terms: I) -> Result<Self, ThreeLieError>
    where
        I: IntoIterator<Item = ((Idx, Idx, Idx), Vec<(usize, Scalar)>)>,
    {
        let triple_terms: Vec<_> = terms
            .into_iter()
            .map(|(triple, sparse)| {
                let mut value = vec![Scalar::zero(); dim];
                for (i, c) in sparse {
                    value[i] = c;
                }
                (vec![], triple, value)
            })
            .collect();
        let bracket = Cochain::from_triple_terms(1, dim, dim, triple_terms)?;
        ThreeLieAlgebra::new(dim, bracket)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket(&self) -> &Cochain {
        &self.bracket
    }

    pub fn bracket_basis(&self, a: Idx, b: Idx, c: Idx) -> Vec<Scalar> {
        self.bracket.eval(&[a, b, c])
    }

    pub fn bracket_vectors(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        self.bracket.pre().eval_w1_vectors(x, y, z)
    }

    /// Bracket with a vector in the final slot and basis pairs up front.
    pub(crate) fn bracket_bbv(&self, a: Idx, b: Idx, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (f, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let bv = self.bracket_basis(a, b, f as Idx);
            for (dst, src) in out.iter_mut().zip(&bv) {
                if !src.is_zero() {
                    *dst += coeff * src;
                }
            }
        }
        out
    }

    /// Bracket with a vector in one slot, at a given position among basis
    /// arguments (full skewness moves it into the final slot).
    pub(crate) fn bracket_with_vector_at(
        &self,
        pos: usize,
        v: &[Scalar],
        others: [Idx; 2],
    ) -> Vec<Scalar> {
        // [v,a,b] = [a,b,v], [a,v,b] = -[a,b,v] ... place v last, track sign
        let base = self.bracket_bbv(others[0], others[1], v);
        let sign = match pos {
            0 => 1,  // (v,a,b) -> (a,b,v): cyclic, even
            1 => -1, // (a,v,b) -> (a,b,v): one transposition
            2 => 1,
            _ => unreachable!(),
        };
        if sign == 1 {
            base
        } else {
            base.iter().map(|x| -x).collect()
        }
    }

    /// Defect of the Fundamental Identity at one basis tuple:
    /// `[x1,x2,[x3,x4,x5]] - [[x1,x2,x3],x4,x5] - [x3,[x1,x2,x4],x5] - [x3,x4,[x1,x2,x5]]`.
    pub fn fi_defect(&self, args: [Idx; 5]) -> Vec<Scalar> {
        let [x1, x2, x3, x4, x5] = args;
        let inner = self.bracket_basis(x3, x4, x5);
        let mut defect = self.bracket_bbv(x1, x2, &inner);
        let t3 = self.bracket_basis(x1, x2, x3);
        let t4 = self.bracket_basis(x1, x2, x4);
        let t5 = self.bracket_basis(x1, x2, x5);
        for (pos, (t, others)) in [
            (0usize, (t3, [x4, x5])),
            (1, (t4, [x3, x5])),
            (2, (t5, [x3, x4])),
        ] {
            let term = self.bracket_with_vector_at(pos, &t, others);
            for (dst, src) in defect.iter_mut().zip(&term) {
                *dst -= src;
            }
        }
        defect
    }

    /// Exhaustive Fundamental Identity check over basis tuples with
    /// `x1 < x2` and `x3 < x4 < x5`. By multilinearity and the skew
    /// symmetries of the defect this covers all tuples.
    pub fn validate_fi(&self) -> FiReport {
        let d = self.dim;
        let mut violations = Vec::new();
        for x1 in 0..d as Idx {
            for x2 in x1 + 1..d as Idx {
                for &(x3, x4, x5) in &triple_list(d) {
                    let args = [x1, x2, x3, x4, x5];
                    let defect = self.fi_defect(args);
                    if defect.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let inner = self.bracket_basis(x3, x4, x5);
                    let lhs = self.bracket_bbv(x1, x2, &inner);
                    let rhs: Vec<Scalar> = lhs.iter().zip(&defect).map(|(l, d)| l - d).collect();
                    violations.push(FiViolation { args, lhs, rhs });
                }
            }
        }
        FiReport { violations }
    }

    /// The same verdict through the graded bracket: the structure map is a
    /// 3-Lie bracket exactly when its self-bracket vanishes.
    pub fn validate_fi_via_mc(&self) -> bool {
        nr_bracket(self.bracket.pre(), self.bracket.pre()).is_zero()
    }

    /// Whether a linear map is a derivation of the bracket.
    pub fn is_derivation(&self, n: &Matrix) -> bool {
        assert_eq!((n.rows(), n.cols()), (self.dim, self.dim));
        for &(a, b, c) in &triple_list(self.dim) {
            let lhs = n.apply(&self.bracket_basis(a, b, c));
            let mut rhs = self.bracket_with_vector_at(0, &n.column(a as usize), [b, c]);
            for (dst, src) in rhs
                .iter_mut()
                .zip(self.bracket_with_vector_at(1, &n.column(b as usize), [a, c]))
            {
                *dst += src;
            }
            for (dst, src) in rhs
                .iter_mut()
                .zip(self.bracket_with_vector_at(2, &n.column(c as usize), [a, b]))
            {
                *dst += src;
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// The linear system cutting out derivations, rows indexed by
    /// (ascending triple, output component), unknowns by matrix entry
    /// `N[r][c]` at column `r*d + c`.
    pub fn derivation_system(&self) -> Matrix {
        let d = self.dim;
        let triples = triple_list(d);
        let mut m = Matrix::zero(triples.len() * d, d * d);
        for (ti, &(a, b, c)) in triples.iter().enumerate() {
            let value = self.bracket_basis(a, b, c);
            for i in 0..d {
                let row = ti * d + i;
                // N applied to the bracket value
                for j in 0..d {
                    if !value[j].is_zero() {
                        m.add_at(row, i * d + j, &value[j]);
                    }
                }
                // minus the bracket with N inserted in each slot
                for (slot, args) in [(a, [b, c]), (b, [a, c]), (c, [a, b])].iter().enumerate() {
                    let (inserted, others) = (args.0, args.1);
                    let sign = if slot == 1 { -1i8 } else { 1 };
                    for f in 0..d {
                        let coeff = &self.bracket_basis(f as Idx, others[0], others[1])[i];
                        if coeff.is_zero() {
                            continue;
                        }
                        let col = f * d + inserted as usize;
                        let v = if sign == 1 { -coeff } else { coeff.clone() };
                        m.add_at(row, col, &v);
                    }
                }
            }
        }
        m
    }

    /// Basis of the derivation algebra.
    pub fn derivation_space(&self) -> Vec<Matrix> {
        let d = self.dim;
        self.derivation_system()
            .kernel_basis()
            .into_iter()
            .map(|v| Matrix::from_fn(d, d, |r, c| v[r * d + c].clone()))
            .collect()
    }
}

/// A representation: a skew map from pairs to endomorphisms of a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra_dim: usize,
    module_dim: usize,
    action: HashMap<(Idx, Idx), Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RepIdentity {
    PairAction,
    FinalSlot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepViolation {
    pub identity: RepIdentity,
    pub args: [Idx; 4],
    pub defect: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepReport {
    pub violations: Vec<RepViolation>,
}

impl RepReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Representation {
    pub fn zero(algebra_dim: usize, module_dim: usize) -> Self {
        Representation {
            algebra_dim,
            module_dim,
            action: HashMap::new(),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// Sets the action of the ascending pair (a,b).
    pub fn set_pair(&mut self, a: Idx, b: Idx, m: Matrix) {
        assert!(a < b && (b as usize) < self.algebra_dim, "pair must ascend");
        assert_eq!((m.rows(), m.cols()), (self.module_dim, self.module_dim));
        if m.is_zero() {
            self.action.remove(&(a, b));
        } else {
            self.action.insert((a, b), m);
        }
    }

    /// Action matrix of an arbitrary basis pair, sign absorbed.
    pub fn pair_matrix(&self, a: Idx, b: Idx) -> Matrix {
        if a == b {
            return Matrix::zero(self.module_dim, self.module_dim);
        }
        let (key, flip) = if a < b { ((a, b), false) } else { ((b, a), true) };
        match self.action.get(&key) {
            None => Matrix::zero(self.module_dim, self.module_dim),
            Some(m) if flip => m.neg(),
            Some(m) => m.clone(),
        }
    }

    pub fn apply_basis(&self, a: Idx, b: Idx, v: &[Scalar]) -> Vec<Scalar> {
        if a == b {
            return vec![Scalar::zero(); self.module_dim];
        }
        let (key, flip) = if a < b { ((a, b), false) } else { ((b, a), true) };
        match self.action.get(&key) {
            None => vec![Scalar::zero(); self.module_dim],
            Some(m) => {
                let out = m.apply(v);
                if flip {
                    out.iter().map(|x| -x).collect()
                } else {
                    out
                }
            }
        }
    }

    /// Action of (vector, basis) expanded by linearity in the first slot.
    pub fn matrix_vb(&self, v: &[Scalar], b: Idx) -> Matrix {
        let mut out = Matrix::zero(self.module_dim, self.module_dim);
        for (f, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.pair_matrix(f as Idx, b).scale(c));
            }
        }
        out
    }

    /// Action of (basis, vector).
    pub fn matrix_bv(&self, a: Idx, v: &[Scalar]) -> Matrix {
        self.matrix_vb(v, a).neg()
    }

    /// The adjoint representation of an algebra on itself.
    pub fn adjoint(alg: &ThreeLieAlgebra) -> Self {
        let d = alg.dim();
        let mut rep = Representation::zero(d, d);
        for a in 0..d as Idx {
            for b in a + 1..d as Idx {
                let m = Matrix::from_fn(d, d, |r, c| alg.bracket_basis(a, b, c as Idx)[r].clone());
                rep.set_pair(a, b, m);
            }
        }
        rep
    }

    /// Dual representation: negated transposes.
    pub fn dual(&self) -> Self {
        let mut out = Representation::zero(self.algebra_dim, self.module_dim);
        for (&(a, b), m) in &self.action {
            out.set_pair(a, b, m.transpose().neg());
        }
        out
    }

    /// Exhaustive check of the two representation identities over all
    /// basis 4-tuples.
    pub fn validate(&self, alg: &ThreeLieAlgebra) -> RepReport {
        assert_eq!(self.algebra_dim, alg.dim());
        let d = self.algebra_dim;
        let mut violations = Vec::new();
        for x1 in 0..d as Idx {
            for x2 in 0..d as Idx {
                for x3 in 0..d as Idx {
                    for x4 in 0..d as Idx {
                        let r12 = self.pair_matrix(x1, x2);
                        let r34 = self.pair_matrix(x3, x4);
                        // action of a pair composes through the bracket
                        let lhs1 = r12.mul(&r34);
                        let rhs1 = self
                            .matrix_vb(&alg.bracket_basis(x1, x2, x3), x4)
                            .add(&self.matrix_bv(x3, &alg.bracket_basis(x1, x2, x4)))
                            .add(&r34.mul(&r12));
                        let defect1 = lhs1.sub(&rhs1);
                        if !defect1.is_zero() {
                            violations.push(RepViolation {
                                identity: RepIdentity::PairAction,
                                args: [x1, x2, x3, x4],
                                defect: defect1,
                            });
                        }
                        // bracket in the second slot of the pair
                        let lhs2 = self.matrix_bv(x1, &alg.bracket_basis(x2, x3, x4));
                        let rhs2 = r34
                            .mul(&r12)
                            .sub(&self.pair_matrix(x2, x4).mul(&self.pair_matrix(x1, x3)))
                            .add(&self.pair_matrix(x2, x3).mul(&self.pair_matrix(x1, x4)));
                        let defect2 = lhs2.sub(&rhs2);
                        if !defect2.is_zero() {
                            violations.push(RepViolation {
                                identity: RepIdentity::FinalSlot,
                                args: [x1, x2, x3, x4],
                                defect: defect2,
                            });
                        }
                    }
                }
            }
        }
        RepReport { violations }
    }
}

/// Semidirect product on `g ⊕ V`: the bracket of three base elements plus
/// the representation acting on the module slot.
pub fn semidirect(alg: &ThreeLieAlgebra, rep: &Representation) -> ThreeLieAlgebra {
    assert_eq!(alg.dim(), rep.algebra_dim());
    let dims = SplitDims {
        base: alg.dim(),
        fiber: rep.module_dim(),
    };
    let total = lift_bracket(alg.bracket(), dims)
        .pre()
        .add(lift_rep(rep, dims).pre());
    let bracket = Cochain::from_pre(total).expect("semidirect bracket is fully skew");
    ThreeLieAlgebra::new(dims.total(), bracket).expect("shape is consistent")
}

/// One linear term of the coboundary display at fixed output arguments:
/// either a scalar multiple of an evaluation of the input cochain, or the
/// action of a basis pair on such an evaluation.
enum DisplayTerm {
    Scaled {
        sign: i8,
        coeff: Scalar,
        fargs: Vec<Idx>,
    },
    Action {
        sign: i8,
        pair: (Idx, Idx),
        fargs: Vec<Idx>,
    },
}

/// Expands the degree-`n` coboundary display at one argument tuple into
/// its linear terms in the input cochain. Both the numeric evaluation and
/// the matrix assembly consume this single expansion.
fn display_terms(alg: &ThreeLieAlgebra, n: usize, args: &[Idx]) -> Vec<DisplayTerm> {
    debug_assert_eq!(args.len(), 2 * n + 1);
    let fin = args[2 * n];
    let px = |i: usize| args[2 * i];
    let py = |i: usize| args[2 * i + 1];
    let mut terms = Vec::new();
    for j in 0..n {
        let sign = parity_sign(j + 1);
        // pair j substituted into both members of every later pair
        for k in j + 1..n {
            for (member_y, sub) in [
                (false, alg.bracket_basis(px(j), py(j), px(k))),
                (true, alg.bracket_basis(px(j), py(j), py(k))),
            ] {
                for (e, coeff) in sub.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut fargs: Vec<Idx> = Vec::with_capacity(2 * n - 1);
                    for i in 0..n {
                        if i == j {
                            continue;
                        }
                        if i == k {
                            if member_y {
                                fargs.push(px(k));
                                fargs.push(e as Idx);
                            } else {
                                fargs.push(e as Idx);
                                fargs.push(py(k));
                            }
                        } else {
                            fargs.push(px(i));
                            fargs.push(py(i));
                        }
                    }
                    fargs.push(fin);
                    terms.push(DisplayTerm::Scaled {
                        sign,
                        coeff: coeff.clone(),
                        fargs,
                    });
                }
            }
        }
        // pair j substituted into the final argument
        let sub = alg.bracket_basis(px(j), py(j), fin);
        for (e, coeff) in sub.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut fargs: Vec<Idx> = Vec::with_capacity(2 * n - 1);
            for i in 0..n {
                if i == j {
                    continue;
                }
                fargs.push(px(i));
                fargs.push(py(i));
            }
            fargs.push(e as Idx);
            terms.push(DisplayTerm::Scaled {
                sign,
                coeff: coeff.clone(),
                fargs,
            });
        }
        // pair j acting on the value of the input cochain
        let mut fargs: Vec<Idx> = Vec::with_capacity(2 * n - 1);
        for i in 0..n {
            if i == j {
                continue;
            }
            fargs.push(px(i));
            fargs.push(py(i));
        }
        fargs.push(fin);
        terms.push(DisplayTerm::Action {
            sign: -sign,
            pair: (px(j), py(j)),
            fargs,
        });
    }
    // cyclic terms mixing the last pair with the final argument
    let sign = parity_sign(n + 1);
    let mut head: Vec<Idx> = Vec::with_capacity(2 * n - 1);
    for i in 0..n - 1 {
        head.push(px(i));
        head.push(py(i));
    }
    let mut fargs = head.clone();
    fargs.push(px(n - 1));
    terms.push(DisplayTerm::Action {
        sign,
        pair: (py(n - 1), fin),
        fargs,
    });
    let mut fargs = head;
    fargs.push(py(n - 1));
    terms.push(DisplayTerm::Action {
        sign,
        pair: (fin, px(n - 1)),
        fargs,
    });
    terms
}

/// The coefficient coboundary evaluated at one argument tuple
/// (`ce_degree` pairs plus a final index), for `f` of weight
/// `ce_degree - 1` with values in the module of `rep`.
pub fn coboundary_apply(
    alg: &ThreeLieAlgebra,
    rep: &Representation,
    f: &PreCochain,
    args: &[Idx],
) -> Vec<Scalar> {
    let n = f.weight() + 1;
    assert_eq!(args.len(), 2 * n + 1, "argument count mismatch");
    assert_eq!(f.ambient_dim(), alg.dim());
    assert_eq!(f.target_dim(), rep.module_dim());
    let m = rep.module_dim();
    let mut out = vec![Scalar::zero(); m];
    let add = |acc: &mut Vec<Scalar>, sign: i8, v: &[Scalar]| {
        for (dst, src) in acc.iter_mut().zip(v) {
            if src.is_zero() {
                continue;
            }
            if sign == 1 {
                *dst += src;
            } else {
                *dst -= src;
            }
        }
    };
    for term in display_terms(alg, n, args) {
        match term {
            DisplayTerm::Scaled { sign, coeff, fargs } => {
                let fv = f.eval(&fargs);
                let scaled: Vec<Scalar> = fv.iter().map(|x| &coeff * x).collect();
                add(&mut out, sign, &scaled);
            }
            DisplayTerm::Action { sign, pair, fargs } => {
                let fv = f.eval(&fargs);
                add(&mut out, sign, &rep.apply_basis(pair.0, pair.1, &fv));
            }
        }
    }
    out
}

/// Materializes the coboundary of one cochain over the full raw keyspace
/// and checks the result is admissible.
pub fn coboundary_cochain(
    alg: &ThreeLieAlgebra,
    rep: &Representation,
    f: &Cochain,
) -> Result<Cochain, ThreeLieError> {
    let n = f.weight() + 1;
    let mut pre = PreCochain::zero(n, alg.dim(), rep.module_dim());
    for key in PreCochain::raw_keys(n, alg.dim()) {
        let v = coboundary_apply(alg, rep, f.pre(), &key);
        if !v.iter().all(Scalar::is_zero) {
            pre.set_entry(&key, v);
        }
    }
    Ok(Cochain::from_pre(pre)?)
}

/// The coboundary of one cochain, computed along two independent paths:
/// the explicit display and the graded bracket with the lifted structure
/// maps on `g ⊕ V` (scaled by `(-1)^{n-1}`). The two must agree bit for
/// bit; disagreement is reported, not corrected.
pub fn coboundary(
    alg: &ThreeLieAlgebra,
    rep: &Representation,
    f: &Cochain,
) -> Result<Cochain, ThreeLieError> {
    let display = coboundary_cochain(alg, rep, f)?;
    let n = f.weight() + 1;
    let dims = SplitDims {
        base: alg.dim(),
        fiber: rep.module_dim(),
    };
    let anchor = lift_bracket(alg.bracket(), dims)
        .pre()
        .add(lift_rep(rep, dims).pre());
    let lifted = lift_cochain(f.pre(), dims);
    let sign = parity_sign(n - 1);
    for key in PreCochain::raw_keys(n, alg.dim()) {
        let raw = nr_bracket_eval(&anchor, &lifted, &key);
        let base = dims.base_part(&raw);
        if !base.iter().all(Scalar::is_zero) {
            return Err(ThreeLieError::PathDisagreement {
                operation: "coboundary",
                args: key,
                detail: "bracket path leaks into the base component".into(),
            });
        }
        let fiber = dims.fiber_part(&raw);
        let bracket_value: Vec<Scalar> = if sign == 1 {
            fiber
        } else {
            fiber.iter().map(|x| -x).collect()
        };
        let display_value = display.eval(&key);
        if bracket_value != display_value {
            return Err(ThreeLieError::PathDisagreement {
                operation: "coboundary",
                args: key,
                detail: format!(
                    "display gives {display_value:?}, bracket gives {bracket_value:?}"
                ),
            });
        }
    }
    Ok(display)
}

fn output_arg_tuples(weight: usize, dim: usize, admissible: bool) -> Vec<Vec<Idx>> {
    if admissible {
        admissible_keys(weight, dim)
            .iter()
            .map(|k| k.args())
            .collect()
    } else {
        PreCochain::raw_keys(weight, dim)
    }
}

/// Assembles the matrix of the degree-`ce_degree` coboundary on the chosen
/// basis (admissible by default, the raw pair-skew basis behind a flag).
/// Rows are (output key, component), columns (input key, component).
///
/// Each output key's row block is filled independently by resolving the
/// display terms to input-basis coordinates; the blocks are computed in
/// parallel and collected in key order, so the result does not depend on
/// the thread count.
pub fn coboundary_matrix(
    alg: &ThreeLieAlgebra,
    rep: &Representation,
    ce_degree: usize,
    admissible: bool,
) -> Matrix {
    assert!(ce_degree >= 1);
    let d = alg.dim();
    let m = rep.module_dim();
    let out_args = output_arg_tuples(ce_degree, d, admissible);
    let cols = complex_space_dim(ce_degree, d, m, admissible);
    let resolve = |fargs: &[Idx]| -> Option<(usize, i8)> {
        if admissible {
            crate::cochain::admissible_coordinate(fargs, d)
        } else {
            crate::cochain::raw_coordinate(fargs, d)
        }
    };

    let blocks: Vec<Vec<Vec<Scalar>>> = out_args
        .par_iter()
        .map(|args| {
            let mut block = vec![vec![Scalar::zero(); cols]; m];
            for term in display_terms(alg, ce_degree, args) {
                match term {
                    DisplayTerm::Scaled { sign, coeff, fargs } => {
                        let Some((key_rank, s2)) = resolve(&fargs) else {
                            continue;
                        };
                        let signed = if sign * s2 == 1 { coeff } else { -coeff };
                        for (t, row) in block.iter_mut().enumerate() {
                            row[key_rank * m + t] += &signed;
                        }
                    }
                    DisplayTerm::Action { sign, pair, fargs } => {
                        let Some((key_rank, s2)) = resolve(&fargs) else {
                            continue;
                        };
                        let action = rep.pair_matrix(pair.0, pair.1);
                        if action.is_zero() {
                            continue;
                        }
                        let total = sign * s2;
                        for (t, row) in block.iter_mut().enumerate() {
                            for src in 0..m {
                                let entry = action.at(t, src);
                                if entry.is_zero() {
                                    continue;
                                }
                                if total == 1 {
                                    row[key_rank * m + src] += entry;
                                } else {
                                    row[key_rank * m + src] -= entry;
                                }
                            }
                        }
                    }
                }
            }
            block
        })
        .collect();

    let rows: Vec<Vec<Scalar>> = blocks.into_iter().flatten().collect();
    Matrix::from_rows(rows)
}

/// Space dimension at a chain degree for the chosen basis.
pub fn complex_space_dim(ce_degree: usize, dim: usize, module_dim: usize, admissible: bool) -> usize {
    if admissible {
        admissible_dim(ce_degree - 1, dim, module_dim)
    } else {
        raw_dim(ce_degree - 1, dim, module_dim)
    }
}

/// Per-degree dimensions of a cochain complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub ce_degree: usize,
    pub domain_dim: usize,
    pub kernel_dim: usize,
    /// rank of the incoming differential (zero at the lowest degree)
    pub image_rank: usize,
    pub cohomology_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CochainComplexReport {
    pub degrees: Vec<DegreeReport>,
}

impl CochainComplexReport {
    /// Builds the report from the differentials `d^1, .., d^max`.
    pub fn from_differentials(matrices: &[Matrix]) -> Result<Self, LinalgError> {
        let mut degrees = Vec::with_capacity(matrices.len());
        let mut prev_rank = 0usize;
        for (i, m) in matrices.iter().enumerate() {
            let domain_dim = m.cols();
            let rank = m.rank();
            let kernel_dim = domain_dim - rank;
            let cohomology_dim = quotient_dim(kernel_dim, prev_rank)?;
            degrees.push(DegreeReport {
                ce_degree: i + 1,
                domain_dim,
                kernel_dim,
                image_rank: prev_rank,
                cohomology_dim,
            });
            prev_rank = rank;
        }
        Ok(CochainComplexReport { degrees })
    }

    pub fn degree(&self, ce_degree: usize) -> Option<&DegreeReport> {
        self.degrees.iter().find(|d| d.ce_degree == ce_degree)
    }
}

/// Cohomology of the algebra with coefficients in a representation.
pub fn cohomology(
    alg: &ThreeLieAlgebra,
    rep: &Representation,
    max_degree: usize,
    admissible: bool,
) -> Result<CochainComplexReport, ThreeLieError> {
    let matrices: Vec<Matrix> = (1..=max_degree)
        .map(|n| coboundary_matrix(alg, rep, n, admissible))
        .collect();
    Ok(CochainComplexReport::from_differentials(&matrices)?)
}

/// A deformed-bracket candidate together with the torsion verdict.
#[derive(Debug, Clone)]
pub struct DeformedBracket {
    pub algebra: ThreeLieAlgebra,
    pub torsion_vanishes: bool,
}

/// The torsion of an endomorphism against the bracket, computed both as a
/// nested graded-bracket expression and via the explicit trilinear
/// display; the two must agree exactly.
pub fn nijenhuis_torsion(alg: &ThreeLieAlgebra, n: &Matrix) -> Result<Cochain, ThreeLieError> {
    assert_eq!((n.rows(), n.cols()), (alg.dim(), alg.dim()));
    let d = alg.dim();
    let pi = alg.bracket().pre();
    let nc = endo_cochain(n);
    let n2 = endo_cochain(&n.mul(n));
    let n3 = endo_cochain(&n.mul(n).mul(n));
    let half = Scalar::ratio(1, 2).expect("nonzero denominator");

    let pn = nr_bracket(pi, nc.pre());
    let pnn = nr_bracket(&pn, nc.pre());
    let pnnn = nr_bracket(&pnn, nc.pre());
    let pn2 = nr_bracket(pi, n2.pre());
    let pn2n = nr_bracket(&pn2, nc.pre());
    let pnn2 = nr_bracket(&pn, n2.pre());
    let pn3 = nr_bracket(pi, n3.pre());
    let via_brackets = pnnn
        .scale(&half)
        .sub(&pn2n.scale(&half))
        .sub(&pnn2)
        .add(&pn3);

    // explicit display per ascending triple: three times the bracket of
    // the images minus three times the image of the deformed value
    let col = |i: Idx| n.column(i as usize);
    let mut terms = Vec::new();
    for &(a, b, c) in &triple_list(d) {
        let mut value = alg.bracket_vectors(&col(a), &col(b), &col(c));
        let n_inner = n.apply(&deformed_value(alg, n, (a, b, c)));
        for (dst, src) in value.iter_mut().zip(&n_inner) {
            *dst -= src;
        }
        let three = Scalar::from_int(3);
        let value: Vec<Scalar> = value.iter().map(|v| v * &three).collect();
        if !value.iter().all(Scalar::is_zero) {
            terms.push((vec![], (a, b, c), value));
        }
    }
    let explicit = Cochain::from_triple_terms(1, d, d, terms)?;

    if explicit.pre() != &via_brackets {
        return Err(ThreeLieError::PathDisagreement {
            operation: "nijenhuis_torsion",
            args: vec![],
            detail: "bracket expression and explicit display differ".into(),
        });
    }
    Ok(explicit)
}

/// The seven-term deformed-bracket value at one ascending triple: three
/// double-insertion terms, minus the image of the three single-insertion
/// terms, plus the double image of the plain bracket.
pub(crate) fn deformed_value(alg: &ThreeLieAlgebra, n: &Matrix, triple: (Idx, Idx, Idx)) -> Vec<Scalar> {
    let d = alg.dim();
    let (a, b, c) = triple;
    let col = |i: Idx| n.column(i as usize);
    let eb = |i: Idx| {
        let mut v = vec![Scalar::zero(); d];
        v[i as usize] = Scalar::one();
        v
    };
    let (x, y, z) = (col(a), col(b), col(c));
    let mut value = alg.bracket_vectors(&x, &y, &eb(c));
    for t in [
        alg.bracket_vectors(&eb(a), &y, &z),
        alg.bracket_vectors(&x, &eb(b), &z),
    ] {
        for (dst, src) in value.iter_mut().zip(&t) {
            *dst += src;
        }
    }
    for t in [
        n.apply(&alg.bracket_vectors(&x, &eb(b), &eb(c))),
        n.apply(&alg.bracket_vectors(&eb(a), &y, &eb(c))),
        n.apply(&alg.bracket_vectors(&eb(a), &eb(b), &z)),
    ] {
        for (dst, src) in value.iter_mut().zip(&t) {
            *dst -= src;
        }
    }
    let n2b = n.mul(n).apply(&alg.bracket_basis(a, b, c));
    for (dst, src) in value.iter_mut().zip(&n2b) {
        *dst += src;
    }
    value
}

/// The deformed bracket induced by an endomorphism, computed through the
/// explicit seven-term display and through
/// `(1/2)([[π,N],N] - [π,N²])`; the two must agree. When the torsion
/// vanishes the result is validated as a 3-Lie algebra and the
/// homomorphism property of `N` is checked.
pub fn deformed_bracket(
    alg: &ThreeLieAlgebra,
    n: &Matrix,
) -> Result<DeformedBracket, ThreeLieError> {
    let d = alg.dim();
    let col = |i: Idx| n.column(i as usize);
    let mut terms = Vec::new();
    for &(a, b, c) in &triple_list(d) {
        let value = deformed_value(alg, n, (a, b, c));
        if !value.iter().all(Scalar::is_zero) {
            terms.push((vec![], (a, b, c), value));
        }
    }
    let explicit = Cochain::from_triple_terms(1, d, d, terms)?;

    let pi = alg.bracket().pre();
    let nc = endo_cochain(n);
    let n2 = endo_cochain(&n.mul(n));
    let half = Scalar::ratio(1, 2).expect("nonzero denominator");
    let pn = nr_bracket(pi, nc.pre());
    let pnn = nr_bracket(&pn, nc.pre());
    let pn2 = nr_bracket(pi, n2.pre());
    let via_brackets = pnn.sub(&pn2).scale(&half);
    if explicit.pre() != &via_brackets {
        return Err(ThreeLieError::PathDisagreement {
            operation: "deformed_bracket",
            args: vec![],
            detail: "bracket expression and explicit display differ".into(),
        });
    }

    let algebra = ThreeLieAlgebra::new(d, explicit)?;
    let torsion_vanishes = nijenhuis_torsion(alg, n)?.is_zero();
    if torsion_vanishes {
        if !algebra.validate_fi().holds() {
            return Err(ThreeLieError::Invalid(
                "torsion vanishes but the deformed bracket fails the Fundamental Identity".into(),
            ));
        }
        // N must intertwine the deformed bracket with the original one
        for &(a, b, c) in &triple_list(d) {
            let lhs = n.apply(&algebra.bracket_basis(a, b, c));
            let rhs = alg.bracket_vectors(&col(a), &col(b), &col(c));
            if lhs != rhs {
                return Err(ThreeLieError::Invalid(
                    "torsion vanishes but N is not a homomorphism from the deformed bracket"
                        .into(),
                ));
            }
        }
    }
    Ok(DeformedBracket {
        algebra,
        torsion_vanishes,
    })
}

/// Verdict on whether the original and deformed brackets fit together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCompatVerdict {
    /// `[π,N]` squares to zero under the graded bracket, i.e. it is
    /// itself a 3-Lie structure; exactly then the original and deformed
    /// brackets are compatible.
    pub compatible: bool,
    /// `[π, π_N] = -(1/2)[[π,N],[π,N]]`, checked bit-exactly.
    pub proof_identity_holds: bool,
}

pub fn nijenhuis_pair_compatibility(
    alg: &ThreeLieAlgebra,
    n: &Matrix,
) -> Result<PairCompatVerdict, ThreeLieError> {
    let pi = alg.bracket().pre();
    let nc = endo_cochain(n);
    let pn = nr_bracket(pi, nc.pre());
    let pn_sq = nr_bracket(&pn, &pn);
    let compatible = pn_sq.is_zero();

    let deformed = deformed_bracket(alg, n)?;
    let lhs = nr_bracket(pi, deformed.algebra.bracket().pre());
    let minus_half = Scalar::ratio(-1, 2).expect("nonzero denominator");
    let rhs = pn_sq.scale(&minus_half);
    Ok(PairCompatVerdict {
        compatible,
        proof_identity_holds: lhs == rhs,
    })
}
