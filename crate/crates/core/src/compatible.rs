//! Compatible pairs of 3-Lie brackets: validation through three
//! characterizations, the bidifferential bicomplex and its cohomology,
//! infinitesimal and order-2 deformations, Nijenhuis operators, compatible
//! representations and semidirect products.

use crate::bracket::{endo_cochain, nr_bracket};
use crate::cochain::{triple_list, Cochain, Idx};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::three_lie::{
    coboundary_cochain, coboundary_matrix, CochainComplexReport, FiReport, RepReport,
    Representation, ThreeLieAlgebra, ThreeLieError,
};
use serde::Serialize;

/// Deterministic sample points for pencil checks. The failure locus of
/// any pencil identity used here is quadratic (compatibility) or linear
/// (torsion) in the two coefficients, so values at (1,0), (0,1), (1,1)
/// already determine it; the remaining points are redundancy.
pub const PENCIL_GRID: [(i64, i64); 9] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (-1, 1),
    (2, 1),
    (1, 2),
    (3, 1),
    (1, 3),
    (2, 3),
];

/// Two 3-Lie bracket candidates on one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatiblePair {
    first: ThreeLieAlgebra,
    second: ThreeLieAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedViolation {
    pub args: [Idx; 5],
    pub defect: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibleReport {
    pub fi_first: FiReport,
    pub fi_second: FiReport,
    pub mixed_violations: Vec<MixedViolation>,
    pub mixed_bracket_vanishes: bool,
}

impl CompatibleReport {
    pub fn is_compatible(&self) -> bool {
        self.fi_first.holds() && self.fi_second.holds() && self.mixed_violations.is_empty()
    }
}

impl CompatiblePair {
    pub fn new(first: ThreeLieAlgebra, second: ThreeLieAlgebra) -> Result<Self, ThreeLieError> {
        if first.dim() != second.dim() {
            return Err(ThreeLieError::Invalid(format!(
                "bracket dimensions differ: {} vs {}",
                first.dim(),
                second.dim()
            )));
        }
        Ok(CompatiblePair { first, second })
    }

    pub fn from_brackets(b1: Cochain, b2: Cochain) -> Result<Self, ThreeLieError> {
        let dim = b1.ambient_dim();
        Ok(CompatiblePair {
            first: ThreeLieAlgebra::new(dim, b1)?,
            second: ThreeLieAlgebra::new(dim, b2)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }

    pub fn first(&self) -> &ThreeLieAlgebra {
        &self.first
    }

    pub fn second(&self) -> &ThreeLieAlgebra {
        &self.second
    }

    /// The pencil member `k1·first + k2·second`.
    pub fn combined(&self, k1: &Scalar, k2: &Scalar) -> ThreeLieAlgebra {
        let bracket = self
            .first
            .bracket()
            .scale(k1)
            .add(&self.second.bracket().scale(k2));
        ThreeLieAlgebra::new(self.dim(), bracket).expect("combined bracket keeps the shape")
    }

    /// The mixed compatibility defect at one basis tuple: the two nested
    /// cross-bracket terms minus the six single-substitution terms,
    /// written out directly (independent of the shuffle machinery).
    pub fn mixed_defect(&self, args: [Idx; 5]) -> Vec<Scalar> {
        let [x1, x2, x3, x4, x5] = args;
        let a = &self.first;
        let b = &self.second;
        let mut defect = a.bracket_bbv(x1, x2, &b.bracket_basis(x3, x4, x5));
        let add = |acc: &mut Vec<Scalar>, sign: i8, v: Vec<Scalar>| {
            for (dst, src) in acc.iter_mut().zip(&v) {
                if sign == 1 {
                    *dst += src;
                } else {
                    *dst -= src;
                }
            }
        };
        add(
            &mut defect,
            1,
            b.bracket_bbv(x1, x2, &a.bracket_basis(x3, x4, x5)),
        );
        for (pos, others) in [(0usize, [x4, x5]), (1, [x3, x5]), (2, [x3, x4])] {
            let inserted = match pos {
                0 => x3,
                1 => x4,
                _ => x5,
            };
            let bv = b.bracket_basis(x1, x2, inserted);
            add(&mut defect, -1, a.bracket_with_vector_at(pos, &bv, others));
            let av = a.bracket_basis(x1, x2, inserted);
            add(&mut defect, -1, b.bracket_with_vector_at(pos, &av, others));
        }
        defect
    }

    /// Validates both Fundamental Identities and compatibility, the
    /// latter along two paths: exhaustive evaluation of the mixed identity
    /// over `x1<x2`, `x3<x4<x5`, and vanishing of the mixed graded
    /// bracket. The two verdicts must agree.
    pub fn validate(&self) -> Result<CompatibleReport, ThreeLieError> {
        let d = self.dim();
        let fi_first = self.first.validate_fi();
        let fi_second = self.second.validate_fi();
        let mut mixed_violations = Vec::new();
        for x1 in 0..d as Idx {
            for x2 in x1 + 1..d as Idx {
                for &(x3, x4, x5) in &triple_list(d) {
                    let args = [x1, x2, x3, x4, x5];
                    let defect = self.mixed_defect(args);
                    if !defect.iter().all(Scalar::is_zero) {
                        mixed_violations.push(MixedViolation { args, defect });
                    }
                }
            }
        }
        let mixed_bracket_vanishes =
            nr_bracket(self.first.bracket().pre(), self.second.bracket().pre()).is_zero();
        if mixed_violations.is_empty() != mixed_bracket_vanishes {
            return Err(ThreeLieError::PathDisagreement {
                operation: "validate_compatible",
                args: vec![],
                detail: "mixed-identity expansion and graded bracket disagree".into(),
            });
        }
        Ok(CompatibleReport {
            fi_first,
            fi_second,
            mixed_violations,
            mixed_bracket_vanishes,
        })
    }

    /// Validates the Fundamental Identity of each sampled pencil member.
    pub fn pencil_check(&self, samples: &[(i64, i64)]) -> PencilReport {
        let samples = samples
            .iter()
            .map(|&(k1, k2)| {
                let member = self.combined(&Scalar::from_int(k1), &Scalar::from_int(k2));
                PencilSample {
                    k1,
                    k2,
                    fi_holds: member.validate_fi().holds(),
                }
            })
            .collect();
        PencilReport { samples }
    }

    /// Basis of simultaneous derivations of both brackets.
    pub fn derivation_space(&self) -> Vec<Matrix> {
        let d = self.dim();
        let sys1 = self.first.derivation_system();
        let sys2 = self.second.derivation_system();
        let stacked = Matrix::from_fn(sys1.rows() + sys2.rows(), d * d, |r, c| {
            if r < sys1.rows() {
                sys1.at(r, c).clone()
            } else {
                sys2.at(r - sys1.rows(), c).clone()
            }
        });
        stacked
            .kernel_basis()
            .into_iter()
            .map(|v| Matrix::from_fn(d, d, |r, c| v[r * d + c].clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PencilSample {
    pub k1: i64,
    pub k2: i64,
    pub fi_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub samples: Vec<PencilSample>,
}

impl PencilReport {
    pub fn all_hold(&self) -> bool {
        self.samples.iter().all(|s| s.fi_holds)
    }
}

/// The three graded-bracket conditions making a pair of weight-1 cochains
/// a compatible structure: each self-bracket and the mixed bracket vanish.
pub fn compatible_mc_check(p1: &Cochain, p2: &Cochain) -> (bool, bool, bool) {
    (
        nr_bracket(p1.pre(), p1.pre()).is_zero(),
        nr_bracket(p1.pre(), p2.pre()).is_zero(),
        nr_bracket(p2.pre(), p2.pre()).is_zero(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationMcReport {
    /// `[π1,t1] + (1/2)[t1,t1] = 0`
    pub eq_first: bool,
    /// `[π1,t2] + [π2,t1] + [t1,t2] = 0`
    pub eq_mixed: bool,
    /// `[π2,t2] + (1/2)[t2,t2] = 0`
    pub eq_second: bool,
    /// independent verdict: the summed pair is compatible
    pub summed_pair_compatible: bool,
}

impl DeformationMcReport {
    pub fn holds(&self) -> bool {
        self.eq_first && self.eq_mixed && self.eq_second
    }
}

/// Whether shifting a validated pair by two weight-1 cochains again gives
/// a compatible pair, decided by the three deformation equations and
/// cross-checked against direct validation of the summed pair.
pub fn deformation_mc_check(
    base: &CompatiblePair,
    t1: &Cochain,
    t2: &Cochain,
) -> Result<DeformationMcReport, ThreeLieError> {
    let p1 = base.first().bracket().pre();
    let p2 = base.second().bracket().pre();
    let half = Scalar::ratio(1, 2).expect("nonzero denominator");
    let eq_first = nr_bracket(p1, t1.pre())
        .add(&nr_bracket(t1.pre(), t1.pre()).scale(&half))
        .is_zero();
    let eq_mixed = nr_bracket(p1, t2.pre())
        .add(&nr_bracket(p2, t1.pre()))
        .add(&nr_bracket(t1.pre(), t2.pre()))
        .is_zero();
    let eq_second = nr_bracket(p2, t2.pre())
        .add(&nr_bracket(t2.pre(), t2.pre()).scale(&half))
        .is_zero();
    let summed = CompatiblePair::from_brackets(
        base.first().bracket().add(t1),
        base.second().bracket().add(t2),
    )?;
    let summed_pair_compatible = summed.validate()?.is_compatible();
    let report = DeformationMcReport {
        eq_first,
        eq_mixed,
        eq_second,
        summed_pair_compatible,
    };
    if report.holds() != summed_pair_compatible {
        return Err(ThreeLieError::PathDisagreement {
            operation: "deformation_mc_check",
            args: vec![],
            detail: "deformation equations and summed-pair validation disagree".into(),
        });
    }
    Ok(report)
}

/// A pair of representations of the two brackets satisfying the mixed
/// identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleRepresentation {
    pub rho: Representation,
    pub mu: Representation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedRepViolation {
    /// which of the two mixed identities failed (1 or 2)
    pub identity: u8,
    pub args: [Idx; 4],
    pub defect: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompRepReport {
    pub rho_report: RepReport,
    pub mu_report: RepReport,
    pub mixed_violations: Vec<MixedRepViolation>,
    /// independent verdict through the semidirect construction
    pub semidirect_compatible: bool,
}

impl CompRepReport {
    pub fn is_valid(&self) -> bool {
        self.rho_report.holds() && self.mu_report.holds() && self.mixed_violations.is_empty()
    }
}

impl CompatibleRepresentation {
    pub fn new(rho: Representation, mu: Representation) -> Result<Self, ThreeLieError> {
        if rho.algebra_dim() != mu.algebra_dim() || rho.module_dim() != mu.module_dim() {
            return Err(ThreeLieError::Invalid(
                "the two actions must share algebra and module dimensions".into(),
            ));
        }
        Ok(CompatibleRepresentation { rho, mu })
    }

    pub fn zero(algebra_dim: usize, module_dim: usize) -> Self {
        CompatibleRepresentation {
            rho: Representation::zero(algebra_dim, module_dim),
            mu: Representation::zero(algebra_dim, module_dim),
        }
    }

    /// Each bracket acting on the space itself.
    pub fn adjoint(pair: &CompatiblePair) -> Self {
        CompatibleRepresentation {
            rho: Representation::adjoint(pair.first()),
            mu: Representation::adjoint(pair.second()),
        }
    }

    /// Negated transposes of both actions.
    pub fn dual(&self) -> Self {
        CompatibleRepresentation {
            rho: self.rho.dual(),
            mu: self.mu.dual(),
        }
    }

    pub fn module_dim(&self) -> usize {
        self.rho.module_dim()
    }

    pub fn algebra_dim(&self) -> usize {
        self.rho.algebra_dim()
    }

    /// Exhaustive check of the single-bracket axioms and the two mixed
    /// identities, cross-checked against compatibility of the semidirect
    /// product pair.
    pub fn validate(&self, pair: &CompatiblePair) -> Result<CompRepReport, ThreeLieError> {
        let d = pair.dim();
        let rho_report = self.rho.validate(pair.first());
        let mu_report = self.mu.validate(pair.second());
        let mut mixed_violations = Vec::new();
        let (rho, mu) = (&self.rho, &self.mu);
        let first = pair.first();
        let second = pair.second();
        for x1 in 0..d as Idx {
            for x2 in 0..d as Idx {
                for x3 in 0..d as Idx {
                    for x4 in 0..d as Idx {
                        let head = rho
                            .matrix_vb(&second.bracket_basis(x1, x2, x3), x4)
                            .add(&mu.matrix_vb(&first.bracket_basis(x1, x2, x3), x4));
                        // commutator form
                        let defect1 = head
                            .add(&rho.matrix_bv(x3, &second.bracket_basis(x1, x2, x4)))
                            .add(&mu.matrix_bv(x3, &first.bracket_basis(x1, x2, x4)))
                            .sub(&rho.pair_matrix(x1, x2).commutator(&mu.pair_matrix(x3, x4)))
                            .add(&rho.pair_matrix(x3, x4).commutator(&mu.pair_matrix(x1, x2)));
                        if !defect1.is_zero() {
                            mixed_violations.push(MixedRepViolation {
                                identity: 1,
                                args: [x1, x2, x3, x4],
                                defect: defect1,
                            });
                        }
                        // mixed-product form
                        let defect2 = head
                            .sub(&rho.pair_matrix(x3, x1).mul(&mu.pair_matrix(x2, x4)))
                            .sub(&mu.pair_matrix(x3, x1).mul(&rho.pair_matrix(x2, x4)))
                            .sub(&rho.pair_matrix(x1, x2).mul(&mu.pair_matrix(x3, x4)))
                            .sub(&mu.pair_matrix(x1, x2).mul(&rho.pair_matrix(x3, x4)))
                            .sub(&rho.pair_matrix(x2, x3).mul(&mu.pair_matrix(x1, x4)))
                            .sub(&mu.pair_matrix(x2, x3).mul(&rho.pair_matrix(x1, x4)));
                        if !defect2.is_zero() {
                            mixed_violations.push(MixedRepViolation {
                                identity: 2,
                                args: [x1, x2, x3, x4],
                                defect: defect2,
                            });
                        }
                    }
                }
            }
        }
        let semidirect_pair = semidirect_compatible(pair, self)?;
        let semidirect_compatible = semidirect_pair.validate()?.is_compatible();
        let axioms_ok =
            rho_report.holds() && mu_report.holds() && mixed_violations.is_empty();
        if axioms_ok != semidirect_compatible {
            return Err(ThreeLieError::PathDisagreement {
                operation: "validate_compatible_representation",
                args: vec![],
                detail: "axioms and semidirect-product verdicts disagree".into(),
            });
        }
        Ok(CompRepReport {
            rho_report,
            mu_report,
            mixed_violations,
            semidirect_compatible,
        })
    }
}

/// Semidirect product pair on `g ⊕ V`.
pub fn semidirect_compatible(
    pair: &CompatiblePair,
    rep: &CompatibleRepresentation,
) -> Result<CompatiblePair, ThreeLieError> {
    CompatiblePair::new(
        crate::three_lie::semidirect(pair.first(), &rep.rho),
        crate::three_lie::semidirect(pair.second(), &rep.mu),
    )
}

/// An element of the degree-`n` space of the bicomplex: `n` cochains of
/// weight `n-1` sharing one coefficient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicochainTuple {
    pub ce_degree: usize,
    pub components: Vec<Cochain>,
}

impl BicochainTuple {
    pub fn new(components: Vec<Cochain>) -> Result<Self, ThreeLieError> {
        let ce_degree = components.len();
        if ce_degree == 0 {
            return Err(ThreeLieError::Invalid("empty tuple".into()));
        }
        let w = components[0].weight();
        if w + 1 != ce_degree {
            return Err(ThreeLieError::Invalid(format!(
                "a degree-{ce_degree} tuple needs weight-{} components, got weight {w}",
                ce_degree - 1
            )));
        }
        for c in &components {
            if c.weight() != w
                || c.ambient_dim() != components[0].ambient_dim()
                || c.target_dim() != components[0].target_dim()
            {
                return Err(ThreeLieError::Invalid(
                    "tuple components must share weight and coefficient space".into(),
                ));
            }
        }
        Ok(BicochainTuple {
            ce_degree,
            components,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Cochain::is_zero)
    }
}

fn delta_actions<'a>(
    pair: &'a CompatiblePair,
    coeffs: Option<&'a CompatibleRepresentation>,
) -> (Representation, Representation) {
    match coeffs {
        Some(r) => (r.rho.clone(), r.mu.clone()),
        None => (
            Representation::adjoint(pair.first()),
            Representation::adjoint(pair.second()),
        ),
    }
}

/// One step of the bicomplex differential: the zigzag of the two
/// single-bracket coboundaries. Self-coefficients when `coeffs` is absent.
pub fn bicomplex_delta(
    pair: &CompatiblePair,
    coeffs: Option<&CompatibleRepresentation>,
    tuple: &BicochainTuple,
) -> Result<BicochainTuple, ThreeLieError> {
    let (rho, mu) = delta_actions(pair, coeffs);
    let n = tuple.ce_degree;
    let d1: Vec<Cochain> = tuple
        .components
        .iter()
        .map(|c| coboundary_cochain(pair.first(), &rho, c))
        .collect::<Result<_, _>>()?;
    let d2: Vec<Cochain> = tuple
        .components
        .iter()
        .map(|c| coboundary_cochain(pair.second(), &mu, c))
        .collect::<Result<_, _>>()?;
    let mut components = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc: Option<Cochain> = None;
        if i < n {
            acc = Some(d1[i].clone());
        }
        if i > 0 {
            acc = Some(match acc {
                None => d2[i - 1].clone(),
                Some(c) => c.add(&d2[i - 1]),
            });
        }
        components.push(acc.expect("each slot receives at least one term"));
    }
    BicochainTuple::new(components)
}

/// The two block matrices making up the degree-`n` bicomplex
/// differential: the coboundary of each bracket on the shared basis.
pub fn bicomplex_blocks(
    pair: &CompatiblePair,
    coeffs: Option<&CompatibleRepresentation>,
    ce_degree: usize,
    admissible: bool,
) -> (Matrix, Matrix) {
    let (rho, mu) = delta_actions(pair, coeffs);
    (
        coboundary_matrix(pair.first(), &rho, ce_degree, admissible),
        coboundary_matrix(pair.second(), &mu, ce_degree, admissible),
    )
}

/// Checks `δ^{n+1} ∘ δ^n = 0` through the block structure of the zigzag:
/// every block of the composite is one of `D1·D1`, `D1·D2 + D2·D1`,
/// `D2·D2`, so the composite vanishes exactly when those three products
/// do. Avoids materializing the large block matrices.
pub fn bicomplex_composite_is_zero(
    pair: &CompatiblePair,
    coeffs: Option<&CompatibleRepresentation>,
    ce_degree: usize,
    admissible: bool,
) -> bool {
    let (d1_lo, d2_lo) = bicomplex_blocks(pair, coeffs, ce_degree, admissible);
    let (d1_hi, d2_hi) = bicomplex_blocks(pair, coeffs, ce_degree + 1, admissible);
    d1_hi.mul(&d1_lo).is_zero()
        && d2_hi.mul(&d2_lo).is_zero()
        && d1_hi.mul(&d2_lo).add(&d2_hi.mul(&d1_lo)).is_zero()
}

/// Matrix of the degree-`n` bicomplex differential: the block zigzag of
/// the two coboundary matrices.
pub fn bicomplex_matrix(
    pair: &CompatiblePair,
    coeffs: Option<&CompatibleRepresentation>,
    ce_degree: usize,
    admissible: bool,
) -> Matrix {
    let (d1, d2) = bicomplex_blocks(pair, coeffs, ce_degree, admissible);
    let (r, c) = (d1.rows(), d1.cols());
    let n = ce_degree;
    let mut out = Matrix::zero((n + 1) * r, n * c);
    for i in 0..=n {
        for j in 0..n {
            let block = if j == i {
                Some(&d1)
            } else if j + 1 == i {
                Some(&d2)
            } else {
                None
            };
            if let Some(b) = block {
                for br in 0..r {
                    for bc in 0..c {
                        let v = b.at(br, bc);
                        if !v.is_zero() {
                            out.set(i * r + br, j * c + bc, v.clone());
                        }
                    }
                }
            }
        }
    }
    out
}

/// Cohomology of the bicomplex up to a degree, with self- or
/// representation coefficients.
pub fn compatible_cohomology(
    pair: &CompatiblePair,
    coeffs: Option<&CompatibleRepresentation>,
    max_degree: usize,
    admissible: bool,
) -> Result<CochainComplexReport, ThreeLieError> {
    let matrices: Vec<Matrix> = (1..=max_degree)
        .map(|n| bicomplex_matrix(pair, coeffs, n, admissible))
        .collect();
    Ok(CochainComplexReport::from_differentials(&matrices)?)
}

/// Deformation data: the order-1 cochains and, for order-2 studies, the
/// order-2 cochains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationData {
    pub omega1: Cochain,
    pub omega2: Cochain,
    pub omega1_tilde: Option<Cochain>,
    pub omega2_tilde: Option<Cochain>,
}

impl DeformationData {
    pub fn order1(omega1: Cochain, omega2: Cochain) -> Self {
        DeformationData {
            omega1,
            omega2,
            omega1_tilde: None,
            omega2_tilde: None,
        }
    }

    pub fn order2(omega1: Cochain, omega1_tilde: Cochain, omega2: Cochain, omega2_tilde: Cochain) -> Self {
        DeformationData {
            omega1,
            omega2,
            omega1_tilde: Some(omega1_tilde),
            omega2_tilde: Some(omega2_tilde),
        }
    }

    fn tildes(&self) -> Result<(&Cochain, &Cochain), ThreeLieError> {
        match (&self.omega1_tilde, &self.omega2_tilde) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(ThreeLieError::Invalid(
                "order-2 data requires both tilde cochains".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinitesimalReport {
    /// `[π1,ω1] = 0`
    pub eq_first: bool,
    /// `[π1,ω2] + [π2,ω1] = 0`
    pub eq_mixed: bool,
    /// `[π2,ω2] = 0`
    pub eq_second: bool,
}

impl InfinitesimalReport {
    pub fn is_cocycle(&self) -> bool {
        self.eq_first && self.eq_mixed && self.eq_second
    }
}

/// The degree-2 cocycle condition for an infinitesimal deformation,
/// checked through the three bracket equations.
pub fn infinitesimal_check(pair: &CompatiblePair, data: &DeformationData) -> InfinitesimalReport {
    let p1 = pair.first().bracket().pre();
    let p2 = pair.second().bracket().pre();
    InfinitesimalReport {
        eq_first: nr_bracket(p1, data.omega1.pre()).is_zero(),
        eq_mixed: nr_bracket(p1, data.omega2.pre())
            .add(&nr_bracket(p2, data.omega1.pre()))
            .is_zero(),
        eq_second: nr_bracket(p2, data.omega2.pre()).is_zero(),
    }
}

/// Matrix of the degree-1 bicomplex differential, used for equivalence
/// and classification solves.
pub fn delta1_matrix(pair: &CompatiblePair, coeffs: Option<&CompatibleRepresentation>) -> Matrix {
    bicomplex_matrix(pair, coeffs, 1, true)
}

/// Coordinates of a pair of weight-1 cochains in the admissible basis of
/// the degree-2 tuple space.
fn pair_coordinates(pair_dim: usize, target_dim: usize, c1: &Cochain, c2: &Cochain) -> Vec<Scalar> {
    let keys = crate::cochain::admissible_keys(1, pair_dim);
    let mut out = Vec::with_capacity(2 * keys.len() * target_dim);
    for c in [c1, c2] {
        for key in &keys {
            out.extend(c.eval(&key.args()));
        }
    }
    out
}

/// Looks for a linear map whose degree-1 coboundary matches the
/// difference of two infinitesimal deformations. Returns the witness or
/// `None` when the classes differ.
pub fn infinitesimal_equivalent(
    pair: &CompatiblePair,
    d1: &DeformationData,
    d2: &DeformationData,
) -> Option<Matrix> {
    let dim = pair.dim();
    let delta1 = delta1_matrix(pair, None);
    let diff1 = d1.omega1.sub(&d2.omega1);
    let diff2 = d1.omega2.sub(&d2.omega2);
    let b = pair_coordinates(dim, dim, &diff1, &diff2);
    let (solution, _) = delta1.solve_affine(&b)?;
    Some(Matrix::from_fn(dim, dim, |r, c| {
        solution[c * dim + r].clone()
    }))
}

/// Per-equation verdicts of the four order-2 blocks (three equations
/// each): the linear block, the quadratic block, the cross block and the
/// top block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Order2Report {
    pub blocks: [[bool; 3]; 4],
}

impl Order2Report {
    pub fn all_hold(&self) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&x| x))
    }
}

/// Evaluates the twelve bracket equations of an order-2 deformation and
/// cross-validates three block-level equivalences: the first block is the
/// degree-2 cocycle condition for the base pair, the top block makes the
/// order-2 cochains a compatible pair, and the cross block is the
/// cocycle condition over that pair.
pub fn order2_check(pair: &CompatiblePair, data: &DeformationData) -> Result<Order2Report, ThreeLieError> {
    let (t1, t2) = data.tildes()?;
    let p1 = pair.first().bracket().pre();
    let p2 = pair.second().bracket().pre();
    let w1 = data.omega1.pre();
    let w2 = data.omega2.pre();
    let half = Scalar::ratio(1, 2).expect("nonzero denominator");

    let block1 = [
        nr_bracket(p1, w1).is_zero(),
        nr_bracket(p1, w2).add(&nr_bracket(p2, w1)).is_zero(),
        nr_bracket(p2, w2).is_zero(),
    ];
    let block2 = [
        nr_bracket(p1, t1.pre())
            .add(&nr_bracket(w1, w1).scale(&half))
            .is_zero(),
        nr_bracket(t1.pre(), p2)
            .add(&nr_bracket(w1, w2))
            .add(&nr_bracket(p1, t2.pre()))
            .is_zero(),
        nr_bracket(p2, t2.pre())
            .add(&nr_bracket(w2, w2).scale(&half))
            .is_zero(),
    ];
    let block3 = [
        nr_bracket(w1, t1.pre()).is_zero(),
        nr_bracket(t1.pre(), w2)
            .add(&nr_bracket(t2.pre(), w1))
            .is_zero(),
        nr_bracket(w2, t2.pre()).is_zero(),
    ];
    let block4 = [
        nr_bracket(t1.pre(), t1.pre()).is_zero(),
        nr_bracket(t1.pre(), t2.pre()).is_zero(),
        nr_bracket(t2.pre(), t2.pre()).is_zero(),
    ];

    // cross-validations of the block meanings
    let block1_all = block1.iter().all(|&x| x);
    if block1_all != infinitesimal_check(pair, data).is_cocycle() {
        return Err(ThreeLieError::PathDisagreement {
            operation: "order2_check",
            args: vec![],
            detail: "linear block does not match the cocycle condition".into(),
        });
    }
    let tilde_pair = CompatiblePair::from_brackets(t1.clone(), t2.clone())?;
    let block4_all = block4.iter().all(|&x| x);
    if block4_all != tilde_pair.validate()?.is_compatible() {
        return Err(ThreeLieError::PathDisagreement {
            operation: "order2_check",
            args: vec![],
            detail: "top block does not match compatibility of the order-2 pair".into(),
        });
    }
    let block3_all = block3.iter().all(|&x| x);
    let cocycle_over_tilde =
        infinitesimal_check(&tilde_pair, &DeformationData::order1(data.omega1.clone(), data.omega2.clone()))
            .is_cocycle();
    if block3_all != cocycle_over_tilde {
        return Err(ThreeLieError::PathDisagreement {
            operation: "order2_check",
            args: vec![],
            detail: "cross block does not match the cocycle condition over the order-2 pair".into(),
        });
    }

    Ok(Order2Report {
        blocks: [block1, block2, block3, block4],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibleNijenhuisReport {
    pub torsion_first_vanishes: bool,
    pub torsion_second_vanishes: bool,
    pub pencil_samples: Vec<PencilSample>,
    /// the bilinear expansion identity relating deformed pencil defects,
    /// checked bit-exactly on each grid point
    pub pencil_identity_holds: bool,
}

impl CompatibleNijenhuisReport {
    pub fn is_nijenhuis(&self) -> bool {
        self.torsion_first_vanishes && self.torsion_second_vanishes
    }
}

fn deformed_defect(alg: &ThreeLieAlgebra, n: &Matrix, triple: (Idx, Idx, Idx)) -> Vec<Scalar> {
    // N applied to the deformed bracket minus the bracket of N-images
    let deformed = crate::three_lie::deformed_value(alg, n, triple);
    let mut out = n.apply(&deformed);
    let (a, b, c) = triple;
    let images = alg.bracket_vectors(
        &n.column(a as usize),
        &n.column(b as usize),
        &n.column(c as usize),
    );
    for (dst, src) in out.iter_mut().zip(&images) {
        *dst -= src;
    }
    out
}

/// Checks that an endomorphism has vanishing torsion for both brackets,
/// that the same holds along the pencil grid, and that the pencil defect
/// decomposes bilinearly into the two single-bracket defects.
pub fn compatible_nijenhuis_check(
    pair: &CompatiblePair,
    n: &Matrix,
) -> Result<CompatibleNijenhuisReport, ThreeLieError> {
    let torsion_first_vanishes = crate::three_lie::nijenhuis_torsion(pair.first(), n)?.is_zero();
    let torsion_second_vanishes = crate::three_lie::nijenhuis_torsion(pair.second(), n)?.is_zero();
    let mut pencil_samples = Vec::with_capacity(PENCIL_GRID.len());
    let mut pencil_identity_holds = true;
    for &(k1, k2) in &PENCIL_GRID {
        let (s1, s2) = (Scalar::from_int(k1), Scalar::from_int(k2));
        let member = pair.combined(&s1, &s2);
        let torsion_zero = crate::three_lie::nijenhuis_torsion(&member, n)?.is_zero();
        pencil_samples.push(PencilSample {
            k1,
            k2,
            fi_holds: torsion_zero,
        });
        for &t in &triple_list(pair.dim()) {
            let combined_defect = deformed_defect(&member, n, t);
            let d1 = deformed_defect(pair.first(), n, t);
            let d2 = deformed_defect(pair.second(), n, t);
            let expected: Vec<Scalar> = d1
                .iter()
                .zip(&d2)
                .map(|(a, b)| &(&s1 * a) + &(&s2 * b))
                .collect();
            if combined_defect != expected {
                pencil_identity_holds = false;
            }
        }
    }
    Ok(CompatibleNijenhuisReport {
        torsion_first_vanishes,
        torsion_second_vanishes,
        pencil_samples,
        pencil_identity_holds,
    })
}

/// Both deformed brackets, validated as a compatible pair; the
/// endomorphism must be a homomorphism onto the original pair.
pub fn deformed_compatible_pair(
    pair: &CompatiblePair,
    n: &Matrix,
) -> Result<CompatiblePair, ThreeLieError> {
    let check = compatible_nijenhuis_check(pair, n)?;
    if !check.is_nijenhuis() {
        return Err(ThreeLieError::Invalid(
            "endomorphism has nonvanishing torsion for one of the brackets".into(),
        ));
    }
    let def1 = crate::three_lie::deformed_bracket(pair.first(), n)?;
    let def2 = crate::three_lie::deformed_bracket(pair.second(), n)?;
    let deformed = CompatiblePair::new(def1.algebra, def2.algebra)?;
    if !deformed.validate()?.is_compatible() {
        return Err(ThreeLieError::Invalid(
            "deformed pair fails compatibility despite vanishing torsion".into(),
        ));
    }
    Ok(deformed)
}

/// The order-2 deformation data generated by a Nijenhuis operator: the
/// single-insertion cochains at order one and the deformed brackets at
/// order two. Passes both the order-2 equations and the triviality
/// equations with the same operator.
pub fn trivial_deformation_from_nijenhuis(
    pair: &CompatiblePair,
    n: &Matrix,
) -> Result<DeformationData, ThreeLieError> {
    let check = compatible_nijenhuis_check(pair, n)?;
    if !check.is_nijenhuis() {
        return Err(ThreeLieError::Invalid(
            "endomorphism has nonvanishing torsion for one of the brackets".into(),
        ));
    }
    let nc = endo_cochain(n);
    let omega1 =
        Cochain::from_pre(nr_bracket(pair.first().bracket().pre(), nc.pre()))?;
    let omega2 =
        Cochain::from_pre(nr_bracket(pair.second().bracket().pre(), nc.pre()))?;
    let tilde1 = crate::three_lie::deformed_bracket(pair.first(), n)?
        .algebra
        .bracket()
        .clone();
    let tilde2 = crate::three_lie::deformed_bracket(pair.second(), n)?
        .algebra
        .bracket()
        .clone();
    Ok(DeformationData::order2(omega1, tilde1, omega2, tilde2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialityReport {
    /// per bracket: the single-insertion equation, the two-insertion
    /// equation and the full-image equation
    pub equations: [bool; 6],
}

impl TrivialityReport {
    pub fn all_hold(&self) -> bool {
        self.equations.iter().all(|&x| x)
    }
}

/// The six equations tying order-2 deformation data to an endomorphism
/// witness of triviality, evaluated directly on ascending triples.
pub fn triviality_check(
    pair: &CompatiblePair,
    data: &DeformationData,
    n: &Matrix,
) -> Result<TrivialityReport, ThreeLieError> {
    let (t1, t2) = data.tildes()?;
    let d = pair.dim();
    let col = |i: Idx| n.column(i as usize);
    let eb = |i: Idx| {
        let mut v = vec![Scalar::zero(); d];
        v[i as usize] = Scalar::one();
        v
    };
    let mut equations = [true; 6];
    for (slot, (alg, omega, tilde)) in [
        (pair.first(), &data.omega1, t1),
        (pair.second(), &data.omega2, t2),
    ]
    .into_iter()
    .enumerate()
    {
        for &(a, b, c) in &triple_list(d) {
            let args = [a, b, c];
            let omega_v = omega.eval(&args);
            let tilde_v = tilde.eval(&args);
            // single N insertion per slot
            let mut one_insertion = alg.bracket_vectors(&col(a), &eb(b), &eb(c));
            for t in [
                alg.bracket_vectors(&eb(a), &col(b), &eb(c)),
                alg.bracket_vectors(&eb(a), &eb(b), &col(c)),
            ] {
                for (dst, src) in one_insertion.iter_mut().zip(&t) {
                    *dst += src;
                }
            }
            let n_bracket = n.apply(&alg.bracket_basis(a, b, c));
            let expected1: Vec<Scalar> = one_insertion
                .iter()
                .zip(&n_bracket)
                .map(|(x, y)| x - y)
                .collect();
            if omega_v != expected1 {
                equations[3 * slot] = false;
            }
            // two N insertions
            let mut two_insertions = alg.bracket_vectors(&col(a), &col(b), &eb(c));
            for t in [
                alg.bracket_vectors(&col(a), &eb(b), &col(c)),
                alg.bracket_vectors(&eb(a), &col(b), &col(c)),
            ] {
                for (dst, src) in two_insertions.iter_mut().zip(&t) {
                    *dst += src;
                }
            }
            let lhs2: Vec<Scalar> = tilde_v
                .iter()
                .zip(n.apply(&omega_v))
                .map(|(x, y)| x + &y)
                .collect();
            if lhs2 != two_insertions {
                equations[3 * slot + 1] = false;
            }
            // full image
            let lhs3 = n.apply(&tilde_v);
            let rhs3 = alg.bracket_vectors(&col(a), &col(b), &col(c));
            if lhs3 != rhs3 {
                equations[3 * slot + 2] = false;
            }
        }
    }
    Ok(TrivialityReport { equations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    pub(crate) fn example_pair() -> CompatiblePair {
        let first = ThreeLieAlgebra::from_triple_terms(4, [((0, 1, 2), vec![(0, s(1))])]).unwrap();
        let second = ThreeLieAlgebra::from_triple_terms(4, [((1, 2, 3), vec![(0, s(1))])]).unwrap();
        CompatiblePair::new(first, second).unwrap()
    }

    fn incompatible_pair() -> CompatiblePair {
        let first = ThreeLieAlgebra::from_triple_terms(4, [((0, 1, 2), vec![(0, s(1))])]).unwrap();
        let second = ThreeLieAlgebra::from_triple_terms(4, [((0, 1, 3), vec![(1, s(1))])]).unwrap();
        CompatiblePair::new(first, second).unwrap()
    }

    #[test]
    fn example_pair_is_compatible_three_ways() {
        let pair = example_pair();
        let report = pair.validate().unwrap();
        assert!(report.is_compatible());
        assert!(report.mixed_bracket_vanishes);
        assert!(pair.pencil_check(&PENCIL_GRID).all_hold());
        let (a, b, c) =
            compatible_mc_check(pair.first().bracket(), pair.second().bracket());
        assert!(a && b && c);
    }

    #[test]
    fn any_bracket_with_zero_partner_is_compatible() {
        let first = ThreeLieAlgebra::from_triple_terms(4, [((0, 1, 2), vec![(0, s(1))])]).unwrap();
        let pair = CompatiblePair::new(first, ThreeLieAlgebra::abelian(4)).unwrap();
        assert!(pair.validate().unwrap().is_compatible());
    }

    #[test]
    fn incompatible_pair_is_detected() {
        let pair = incompatible_pair();
        let report = pair.validate().unwrap();
        assert!(report.fi_first.holds() && report.fi_second.holds());
        assert!(!report.is_compatible());
        assert!(!report.mixed_bracket_vanishes);
        let (a, b, c) =
            compatible_mc_check(pair.first().bracket(), pair.second().bracket());
        assert!(a && !b && c);
        // the sum bracket fails the Fundamental Identity
        let sample = pair.pencil_check(&[(1, 1)]);
        assert!(!sample.all_hold());
        // and each bracket alone passes
        assert!(pair.pencil_check(&[(1, 0), (0, 1)]).all_hold());
    }

    #[test]
    fn self_pair_passes_mc_check() {
        let pair = example_pair();
        let (a, b, c) =
            compatible_mc_check(pair.first().bracket(), pair.first().bracket());
        assert!(a && b && c);
    }

    #[test]
    fn deformation_by_doubling_is_compatible() {
        let pair = example_pair();
        let report = deformation_mc_check(
            &pair,
            pair.first().bracket(),
            pair.second().bracket(),
        )
        .unwrap();
        assert!(report.holds() && report.summed_pair_compatible);
        // zero deformation is trivially fine
        let zero = Cochain::zero(1, 4, 4);
        let report = deformation_mc_check(&pair, &zero, &zero).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn adjoint_pair_is_a_compatible_representation() {
        let pair = example_pair();
        let adj = CompatibleRepresentation::adjoint(&pair);
        assert!(adj.validate(&pair).unwrap().is_valid());
        // the coadjoint as well
        assert!(adj.dual().validate(&pair).unwrap().is_valid());
        // the zero pair on any module
        assert!(CompatibleRepresentation::zero(4, 2)
            .validate(&pair)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn corrupted_action_fails_and_breaks_the_semidirect_product() {
        let pair = example_pair();
        let mut rep = CompatibleRepresentation::adjoint(&pair);
        let mut m = rep.mu.pair_matrix(0, 1);
        m.add_at(0, 0, &s(1));
        rep.mu.set_pair(0, 1, m);
        // validation must report invalid along both paths (so no
        // disagreement error) or fail the mixed identity
        match rep.validate(&pair) {
            Ok(report) => assert!(!report.is_valid()),
            Err(e) => panic!("paths disagreed: {e}"),
        }
    }

    #[test]
    fn semidirect_with_adjoint_pair_is_compatible() {
        let pair = example_pair();
        let adj = CompatibleRepresentation::adjoint(&pair);
        let total = semidirect_compatible(&pair, &adj).unwrap();
        assert_eq!(total.dim(), 8);
        assert!(total.validate().unwrap().is_compatible());
    }

    #[test]
    fn delta_on_identity_gives_twice_the_brackets() {
        let pair = example_pair();
        let id = endo_cochain(&Matrix::identity(4));
        let tuple = BicochainTuple::new(vec![id]).unwrap();
        let out = bicomplex_delta(&pair, None, &tuple).unwrap();
        assert_eq!(out.components.len(), 2);
        assert_eq!(
            out.components[0].pre(),
            &pair.first().bracket().pre().scale(&s(2))
        );
        assert_eq!(
            out.components[1].pre(),
            &pair.second().bracket().pre().scale(&s(2))
        );
    }

    #[test]
    fn delta_kills_pair_derivations() {
        let pair = example_pair();
        for der in pair.derivation_space() {
            let tuple = BicochainTuple::new(vec![endo_cochain(&der)]).unwrap();
            let out = bicomplex_delta(&pair, None, &tuple).unwrap();
            assert!(out.is_zero());
        }
    }

    #[test]
    fn delta_squares_to_zero_on_a_random_endomorphism() {
        let pair = example_pair();
        let n = Matrix::from_fn(4, 4, |r, c| s(((3 * r + c) % 4) as i64 - 1));
        let tuple = BicochainTuple::new(vec![endo_cochain(&n)]).unwrap();
        let once = bicomplex_delta(&pair, None, &tuple).unwrap();
        let twice = bicomplex_delta(&pair, None, &once).unwrap();
        assert!(twice.is_zero());
        // as assembled matrices, both densely and through the block form
        let m1 = bicomplex_matrix(&pair, None, 1, true);
        let m2 = bicomplex_matrix(&pair, None, 2, true);
        assert!(m2.mul(&m1).is_zero());
        assert!(bicomplex_composite_is_zero(&pair, None, 1, true));
        assert!(bicomplex_composite_is_zero(&pair, None, 2, true));
    }

    #[test]
    fn abelian_pair_cohomology_counts_dimensions() {
        let pair = CompatiblePair::new(ThreeLieAlgebra::abelian(3), ThreeLieAlgebra::abelian(3))
            .unwrap();
        let report = compatible_cohomology(&pair, None, 2, true).unwrap();
        let h2 = report.degree(2).unwrap();
        assert_eq!(h2.domain_dim, 6); // two copies of C(3,3)*3
        assert_eq!(h2.cohomology_dim, 6);
    }

    #[test]
    fn first_cohomology_is_the_pair_derivation_space() {
        let pair = example_pair();
        let report = compatible_cohomology(&pair, None, 1, true).unwrap();
        assert_eq!(
            report.degree(1).unwrap().cohomology_dim,
            pair.derivation_space().len()
        );
    }

    #[test]
    fn infinitesimal_cocycles_from_the_brackets_and_coboundaries() {
        let pair = example_pair();
        // the pair itself is a cocycle
        let data = DeformationData::order1(
            pair.first().bracket().clone(),
            pair.second().bracket().clone(),
        );
        assert!(infinitesimal_check(&pair, &data).is_cocycle());
        // coboundaries are cocycles
        let n = Matrix::from_fn(4, 4, |r, c| s(((r * 2 + 3 * c) % 5) as i64 - 2));
        let tuple = BicochainTuple::new(vec![endo_cochain(&n)]).unwrap();
        let image = bicomplex_delta(&pair, None, &tuple).unwrap();
        let data = DeformationData::order1(
            image.components[0].clone(),
            image.components[1].clone(),
        );
        assert!(infinitesimal_check(&pair, &data).is_cocycle());
    }

    #[test]
    fn non_cocycle_data_reports_the_failing_equation() {
        let pair = example_pair();
        // a lone value on (1,2,4) -> e2 breaks the first bracket equation
        let mut v = vec![Scalar::zero(); 4];
        v[1] = Scalar::one();
        let w1 = Cochain::from_triple_terms(1, 4, 4, [(vec![], (0, 1, 3), v)]).unwrap();
        let data = DeformationData::order1(w1, Cochain::zero(1, 4, 4));
        let report = infinitesimal_check(&pair, &data);
        assert!(!report.is_cocycle());
        assert!(!report.eq_first);
    }

    #[test]
    fn equivalence_finds_the_shifting_endomorphism() {
        let pair = example_pair();
        let base = DeformationData::order1(
            pair.first().bracket().clone(),
            pair.second().bracket().clone(),
        );
        // identical data: witness exists (zero works)
        let w = infinitesimal_equivalent(&pair, &base, &base).unwrap();
        let shifted_by_w = bicomplex_delta(
            &pair,
            None,
            &BicochainTuple::new(vec![endo_cochain(&w)]).unwrap(),
        )
        .unwrap();
        assert!(shifted_by_w.is_zero());
        // shift by a coboundary: witness recovers it up to a cocycle
        let n = Matrix::from_fn(4, 4, |r, c| s(((r + c * c) % 3) as i64));
        let image = bicomplex_delta(
            &pair,
            None,
            &BicochainTuple::new(vec![endo_cochain(&n)]).unwrap(),
        )
        .unwrap();
        let shifted = DeformationData::order1(
            base.omega1.add(&image.components[0]),
            base.omega2.add(&image.components[1]),
        );
        let witness = infinitesimal_equivalent(&pair, &shifted, &base).unwrap();
        let back = bicomplex_delta(
            &pair,
            None,
            &BicochainTuple::new(vec![endo_cochain(&witness)]).unwrap(),
        )
        .unwrap();
        assert_eq!(back.components[0].pre(), image.components[0].pre());
        assert_eq!(back.components[1].pre(), image.components[1].pre());
    }

    #[test]
    fn nijenhuis_identity_and_scalars() {
        let pair = example_pair();
        for n in [
            Matrix::identity(4),
            Matrix::identity(4).scale(&Scalar::ratio(-5, 3).unwrap()),
            Matrix::zero(4, 4),
        ] {
            let report = compatible_nijenhuis_check(&pair, &n).unwrap();
            assert!(report.is_nijenhuis());
            assert!(report.pencil_identity_holds);
            assert!(report.pencil_samples.iter().all(|s| s.fi_holds));
        }
    }

    #[test]
    fn deformed_pair_from_identity_and_scalar() {
        let pair = example_pair();
        let same = deformed_compatible_pair(&pair, &Matrix::identity(4)).unwrap();
        assert_eq!(same.first().bracket(), pair.first().bracket());
        assert_eq!(same.second().bracket(), pair.second().bracket());
        let lam = Scalar::from_int(3);
        let scaled = deformed_compatible_pair(&pair, &Matrix::identity(4).scale(&lam)).unwrap();
        assert_eq!(
            scaled.first().bracket().pre(),
            &pair.first().bracket().pre().scale(&s(9))
        );
    }

    #[test]
    fn nijenhuis_generates_trivial_order2_data() {
        let pair = example_pair();
        // identity: order-1 data doubles the brackets, order-2 reproduces them
        let data = trivial_deformation_from_nijenhuis(&pair, &Matrix::identity(4)).unwrap();
        assert_eq!(
            data.omega1.pre(),
            &pair.first().bracket().pre().scale(&s(2))
        );
        assert_eq!(
            data.omega1_tilde.as_ref().unwrap().pre(),
            pair.first().bracket().pre()
        );
        let order2 = order2_check(&pair, &data).unwrap();
        assert!(order2.all_hold());
        let triv = triviality_check(&pair, &data, &Matrix::identity(4)).unwrap();
        assert!(triv.all_hold());
        // zero operator: everything collapses to zero
        let data = trivial_deformation_from_nijenhuis(&pair, &Matrix::zero(4, 4)).unwrap();
        assert!(data.omega1.is_zero() && data.omega2.is_zero());
        assert!(order2_check(&pair, &data).unwrap().all_hold());
        assert!(triviality_check(&pair, &data, &Matrix::zero(4, 4))
            .unwrap()
            .all_hold());
    }

    #[test]
    fn broken_order2_top_block_is_reported() {
        let pair = example_pair();
        // order-2 cochains that are not a 3-Lie structure
        let bad = ThreeLieAlgebra::from_triple_terms(
            4,
            [((0, 1, 2), vec![(0, s(1))]), ((0, 1, 3), vec![(1, s(1))])],
        )
        .unwrap();
        let data = DeformationData::order2(
            Cochain::zero(1, 4, 4),
            bad.bracket().clone(),
            Cochain::zero(1, 4, 4),
            Cochain::zero(1, 4, 4),
        );
        let report = order2_check(&pair, &data).unwrap();
        assert!(!report.blocks[3][0]);
    }

    #[test]
    fn all_zero_order2_data_passes() {
        let pair = example_pair();
        let z = || Cochain::zero(1, 4, 4);
        let data = DeformationData::order2(z(), z(), z(), z());
        assert!(order2_check(&pair, &data).unwrap().all_hold());
        assert!(triviality_check(&pair, &data, &Matrix::zero(4, 4))
            .unwrap()
            .all_hold());
    }

    #[test]
    fn triviality_fails_for_a_shifted_witness() {
        let pair = example_pair();
        let n = Matrix::identity(4).scale(&s(2));
        let data = trivial_deformation_from_nijenhuis(&pair, &n).unwrap();
        assert!(triviality_check(&pair, &data, &n).unwrap().all_hold());
        let shifted = n.add(&Matrix::identity(4));
        assert!(!triviality_check(&pair, &data, &shifted)
            .unwrap()
            .all_hold());
    }
}
