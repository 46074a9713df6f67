//! Verb implementations. Each verb parses its inputs, enforces the
//! operation's preconditions (failures exit with code 2), runs exactly
//! one library operation or a fixed composition, and assembles a
//! deterministic report (verdict true -> exit 0, false -> exit 1).

use crate::report::Report;
use crate::{Cli, Command};
use anyhow::{anyhow, bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use std::path::Path;
use trilie_core::cochain::Idx;
use trilie_core::compatible::{
    compatible_cohomology, compatible_mc_check, compatible_nijenhuis_check,
    deformed_compatible_pair, infinitesimal_check, infinitesimal_equivalent, order2_check,
    triviality_check, trivial_deformation_from_nijenhuis, CompatiblePair,
    CompatibleRepresentation, DeformationData, PENCIL_GRID,
};
use trilie_core::extensions::{
    build_extension, classify, extract_cocycle, induced_representation, ClassifyOutcome,
    ExtensionError, Section,
};
use trilie_core::io::{
    self, cochain_to_file, compatible_rep_to_file, matrix_to_file, parse_algebra_or_pair,
    parse_deformation, parse_extension, parse_matrix, parse_rep, AlgebraInput, RepInput,
};
use trilie_core::scalar::Scalar;
use trilie_core::split::SplitDims;
use trilie_core::three_lie::{
    cohomology, complex_space_dim, deformed_bracket, nijenhuis_pair_compatibility,
    nijenhuis_torsion, FiViolation, Representation,
};

pub const DEFAULT_DEGREE_BOUND: usize = 4;

/// Degree bound, overridable through `TRILIE_MAX_DEGREE`.
pub fn degree_bound() -> usize {
    std::env::var("TRILIE_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DEGREE_BOUND)
}

struct Loaded {
    path: String,
    bytes: Vec<u8>,
    text: String,
}

fn load(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let text = String::from_utf8(bytes.clone())
        .with_context(|| format!("{} is not valid UTF-8", path.display()))?;
    Ok(Loaded {
        path: path.display().to_string(),
        bytes,
        text,
    })
}

fn one_based(args: &[Idx]) -> Vec<usize> {
    args.iter().map(|&i| i as usize + 1).collect()
}

#[derive(Serialize)]
struct ViolationOut {
    args: Vec<usize>,
    lhs: Vec<Scalar>,
    rhs: Vec<Scalar>,
}

fn fi_violations_out(violations: &[FiViolation]) -> Vec<ViolationOut> {
    violations
        .iter()
        .map(|v| ViolationOut {
            args: one_based(&v.args),
            lhs: v.lhs.clone(),
            rhs: v.rhs.clone(),
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Validate { input } => validate(input),
        Command::Cohomology {
            input,
            degree,
            coeffs,
            adjoint,
            raw_complex,
        } => cohomology_verb(input, *degree, coeffs.as_deref(), *adjoint, *raw_complex),
        Command::Derivations { input } => derivations(input),
        Command::McCheck { input } => mc_check(input),
        Command::DeformCheck { pair, deformation } => deform_check(pair, deformation),
        Command::DeformEquivalent {
            pair,
            first,
            second,
        } => deform_equivalent(pair, first, second),
        Command::Nijenhuis {
            input,
            operator,
            grid,
            seed,
        } => nijenhuis(input, operator, *grid, *seed),
        Command::DeformOrder2 { pair, deformation } => deform_order2(pair, deformation),
        Command::ExtensionBuild { extension } => extension_build(extension),
        Command::ExtensionExtract { extension, section } => {
            extension_extract(extension, section)
        }
        Command::ExtensionClassify { first, second } => extension_classify(first, second),
        Command::Selftest { seed } => Ok(crate::selftest::run(*seed)),
    }
}

fn validate(input: &Path) -> Result<Report> {
    let loaded = load(input)?;
    let report = Report::new("validate").input(&loaded.path, &loaded.bytes);
    match parse_algebra_or_pair(&loaded.text)? {
        AlgebraInput::Single(alg) => {
            let fi = alg.validate_fi();
            let via_mc = alg.validate_fi_via_mc();
            if fi.holds() != via_mc {
                bail!("internal disagreement between direct and bracket-based validation");
            }
            Ok(report.verdict(fi.holds()).details(&json!({
                "kind": "algebra",
                "dim": alg.dim(),
                "fundamental_identity_holds": fi.holds(),
                "bracket_square_vanishes": via_mc,
                "violations": fi_violations_out(&fi.violations),
            })))
        }
        AlgebraInput::Pair(pair) => {
            let validation = pair.validate()?;
            let pencil = pair.pencil_check(&PENCIL_GRID);
            let mixed: Vec<_> = validation
                .mixed_violations
                .iter()
                .map(|v| {
                    json!({ "args": one_based(&v.args), "defect": v.defect })
                })
                .collect();
            let compatible = validation.is_compatible() && pencil.all_hold();
            Ok(report.verdict(compatible).details(&json!({
                "kind": "pair",
                "dim": pair.dim(),
                "fi_first_holds": validation.fi_first.holds(),
                "fi_second_holds": validation.fi_second.holds(),
                "fi_first_violations": fi_violations_out(&validation.fi_first.violations),
                "fi_second_violations": fi_violations_out(&validation.fi_second.violations),
                "mixed_identity_holds": validation.mixed_violations.is_empty(),
                "mixed_violations": mixed,
                "mixed_bracket_vanishes": validation.mixed_bracket_vanishes,
                "pencil": pencil,
                "compatible": compatible,
            })))
        }
    }
}

fn parse_coeff_rep(
    text: &str,
    algebra_dim: usize,
    need_pair: bool,
) -> Result<(Option<Representation>, Option<CompatibleRepresentation>)> {
    match parse_rep(text, algebra_dim)? {
        RepInput::Single(r) if need_pair => {
            bail!("coefficients for a pair need both rho and mu; got a single action: module_dim {}", r.module_dim())
        }
        RepInput::Single(r) => Ok((Some(r), None)),
        RepInput::Pair(r) => Ok((None, Some(r))),
    }
}

fn cohomology_verb(
    input: &Path,
    degree: usize,
    coeffs: Option<&Path>,
    adjoint: bool,
    raw_complex: bool,
) -> Result<Report> {
    let bound = degree_bound();
    if degree == 0 || degree > bound {
        bail!("--degree must be between 1 and the bound {bound} (override with TRILIE_MAX_DEGREE)");
    }
    let loaded = load(input)?;
    let mut report = Report::new("cohomology")
        .input(&loaded.path, &loaded.bytes)
        .flag("degree", degree)
        .flag("raw-complex", raw_complex)
        .flag("adjoint", adjoint);
    let coeff_loaded = coeffs.map(load).transpose()?;
    if let Some(c) = &coeff_loaded {
        report = report.input(&c.path, &c.bytes);
    }
    let admissible = !raw_complex;
    match parse_algebra_or_pair(&loaded.text)? {
        AlgebraInput::Single(alg) => {
            let fi = alg.validate_fi();
            if !fi.holds() {
                bail!("input does not satisfy the Fundamental Identity");
            }
            let rep = match &coeff_loaded {
                None => Representation::adjoint(&alg),
                Some(c) => {
                    let (single, pair_rep) = parse_coeff_rep(&c.text, alg.dim(), false)?;
                    match (single, pair_rep) {
                        (Some(r), _) => r,
                        (None, Some(_)) => {
                            bail!("a single algebra takes a single-action coefficient file")
                        }
                        _ => unreachable!(),
                    }
                }
            };
            if !rep.validate(&alg).holds() {
                bail!("coefficient representation fails its axioms");
            }
            warn_memory(degree, alg.dim(), rep.module_dim(), admissible, 1);
            let result = cohomology(&alg, &rep, degree, admissible)?;
            Ok(report.verdict(true).details(&json!({
                "kind": "algebra",
                "complex": if admissible { "admissible" } else { "raw" },
                "coefficients": if coeff_loaded.is_some() { "file" } else { "adjoint" },
                "degrees": result.degrees,
            })))
        }
        AlgebraInput::Pair(pair) => {
            if !pair.validate()?.is_compatible() {
                bail!("input pair is not compatible");
            }
            let rep = match &coeff_loaded {
                None => None,
                Some(c) => {
                    let (_, pair_rep) = parse_coeff_rep(&c.text, pair.dim(), true)?;
                    let rep = pair_rep.expect("pair coefficients");
                    if !rep.validate(&pair)?.is_valid() {
                        bail!("coefficient representation fails its axioms");
                    }
                    Some(rep)
                }
            };
            let m = rep.as_ref().map_or(pair.dim(), |r| r.module_dim());
            warn_memory(degree, pair.dim(), m, admissible, degree + 1);
            let result = compatible_cohomology(&pair, rep.as_ref(), degree, admissible)?;
            Ok(report.verdict(true).details(&json!({
                "kind": "pair",
                "complex": if admissible { "admissible" } else { "raw" },
                "coefficients": if coeff_loaded.is_some() { "file" } else { "self" },
                "degrees": result.degrees,
            })))
        }
    }
}

fn warn_memory(degree: usize, dim: usize, module_dim: usize, admissible: bool, copies: usize) {
    let rows = complex_space_dim(degree + 1, dim, module_dim, admissible) * copies;
    let cols = complex_space_dim(degree, dim, module_dim, admissible) * copies;
    let entries = rows.saturating_mul(cols);
    if entries > 1_000_000 {
        eprintln!(
            "note: assembling a differential with about {entries} exact entries; this may take a while"
        );
    }
}

fn derivations(input: &Path) -> Result<Report> {
    let loaded = load(input)?;
    let report = Report::new("derivations").input(&loaded.path, &loaded.bytes);
    let (kind, basis) = match parse_algebra_or_pair(&loaded.text)? {
        AlgebraInput::Single(alg) => ("algebra", alg.derivation_space()),
        AlgebraInput::Pair(pair) => ("pair", pair.derivation_space()),
    };
    let rendered: Vec<_> = basis.iter().map(|m| matrix_to_file(m).matrix).collect();
    Ok(report.verdict(true).details(&json!({
        "kind": kind,
        "dimension": basis.len(),
        "basis": rendered,
    })))
}

fn mc_check(input: &Path) -> Result<Report> {
    let loaded = load(input)?;
    let report = Report::new("mc-check").input(&loaded.path, &loaded.bytes);
    let AlgebraInput::Pair(pair) = parse_algebra_or_pair(&loaded.text)? else {
        bail!("mc-check takes a pair file");
    };
    let (first, mixed, second) =
        compatible_mc_check(pair.first().bracket(), pair.second().bracket());
    Ok(report.verdict(first && mixed && second).details(&json!({
        "first_self_bracket_vanishes": first,
        "mixed_bracket_vanishes": mixed,
        "second_self_bracket_vanishes": second,
    })))
}

fn load_pair(path: &Path) -> Result<(Loaded, CompatiblePair)> {
    let loaded = load(path)?;
    let AlgebraInput::Pair(pair) = parse_algebra_or_pair(&loaded.text)? else {
        bail!("{} must be a pair file", loaded.path);
    };
    if !pair.validate()?.is_compatible() {
        bail!("{} is not a compatible pair", loaded.path);
    }
    Ok((loaded, pair))
}

fn deform_check(pair_path: &Path, deformation: &Path) -> Result<Report> {
    let (pair_loaded, pair) = load_pair(pair_path)?;
    let def_loaded = load(deformation)?;
    let data = parse_deformation(&def_loaded.text)?;
    check_deformation_dims(&pair, &data)?;
    let result = infinitesimal_check(&pair, &data);
    Ok(Report::new("deform-check")
        .input(&pair_loaded.path, &pair_loaded.bytes)
        .input(&def_loaded.path, &def_loaded.bytes)
        .verdict(result.is_cocycle())
        .details(&json!({
            "eq_first": result.eq_first,
            "eq_mixed": result.eq_mixed,
            "eq_second": result.eq_second,
            "is_cocycle": result.is_cocycle(),
        })))
}

fn check_deformation_dims(pair: &CompatiblePair, data: &DeformationData) -> Result<()> {
    for (name, c) in [("omega1", &data.omega1), ("omega2", &data.omega2)] {
        if c.weight() != 1 || c.ambient_dim() != pair.dim() || c.target_dim() != pair.dim() {
            bail!("{name} must be a weight-1 self-coefficient cochain on dimension {}", pair.dim());
        }
    }
    for (name, c) in [
        ("omega1_tilde", &data.omega1_tilde),
        ("omega2_tilde", &data.omega2_tilde),
    ] {
        if let Some(c) = c {
            if c.weight() != 1 || c.ambient_dim() != pair.dim() || c.target_dim() != pair.dim() {
                bail!("{name} must be a weight-1 self-coefficient cochain on dimension {}", pair.dim());
            }
        }
    }
    Ok(())
}

fn deform_equivalent(pair_path: &Path, first: &Path, second: &Path) -> Result<Report> {
    let (pair_loaded, pair) = load_pair(pair_path)?;
    let first_loaded = load(first)?;
    let second_loaded = load(second)?;
    let d1 = parse_deformation(&first_loaded.text)?;
    let d2 = parse_deformation(&second_loaded.text)?;
    check_deformation_dims(&pair, &d1)?;
    check_deformation_dims(&pair, &d2)?;
    for (name, d) in [("first", &d1), ("second", &d2)] {
        if !infinitesimal_check(&pair, d).is_cocycle() {
            bail!("{name} deformation is not a 2-cocycle");
        }
    }
    let witness = infinitesimal_equivalent(&pair, &d1, &d2);
    let report = Report::new("deform-equivalent")
        .input(&pair_loaded.path, &pair_loaded.bytes)
        .input(&first_loaded.path, &first_loaded.bytes)
        .input(&second_loaded.path, &second_loaded.bytes);
    match witness {
        Some(n) => Ok(report.verdict(true).details(&json!({
            "equivalent": true,
            "witness": matrix_to_file(&n).matrix,
        }))),
        None => Ok(report.verdict(false).details(&json!({
            "equivalent": false,
            "witness": null,
        }))),
    }
}

fn nijenhuis(input: &Path, operator: &Path, grid: usize, seed: u64) -> Result<Report> {
    let loaded = load(input)?;
    let op_loaded = load(operator)?;
    let n = parse_matrix(&op_loaded.text)?;
    let report = Report::new("nijenhuis")
        .input(&loaded.path, &loaded.bytes)
        .input(&op_loaded.path, &op_loaded.bytes)
        .flag("grid", grid)
        .flag("seed", seed);
    match parse_algebra_or_pair(&loaded.text)? {
        AlgebraInput::Single(alg) => {
            if !alg.validate_fi().holds() {
                bail!("input does not satisfy the Fundamental Identity");
            }
            if n.rows() != alg.dim() || n.cols() != alg.dim() {
                bail!("operator must be {0}x{0}", alg.dim());
            }
            let torsion = nijenhuis_torsion(&alg, &n)?;
            let deformed = deformed_bracket(&alg, &n)?;
            let pair_verdict = nijenhuis_pair_compatibility(&alg, &n)?;
            Ok(report.verdict(torsion.is_zero()).details(&json!({
                "kind": "algebra",
                "torsion_vanishes": torsion.is_zero(),
                "deformed_bracket_validated": deformed.torsion_vanishes,
                "deformed_bracket": cochain_to_file(deformed.algebra.bracket()),
                "deformed_fi_holds": deformed.algebra.validate_fi().holds(),
                "pair_with_deformed_compatible": pair_verdict.compatible,
                "proof_identity_holds": pair_verdict.proof_identity_holds,
            })))
        }
        AlgebraInput::Pair(pair) => {
            if !pair.validate()?.is_compatible() {
                bail!("input pair is not compatible");
            }
            if n.rows() != pair.dim() || n.cols() != pair.dim() {
                bail!("operator must be {0}x{0}", pair.dim());
            }
            let mut check = compatible_nijenhuis_check(&pair, &n)?;
            if grid > 0 {
                // fuzz mode: extra seeded sample points on top of the grid
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let extra: Vec<(i64, i64)> = (0..grid)
                    .map(|_| (rng.gen_range(-5..=5), rng.gen_range(-5..=5)))
                    .collect();
                for &(k1, k2) in &extra {
                    let member =
                        pair.combined(&Scalar::from_int(k1), &Scalar::from_int(k2));
                    let torsion_zero = nijenhuis_torsion(&member, &n)?.is_zero();
                    check.pencil_samples.push(
                        trilie_core::compatible::PencilSample {
                            k1,
                            k2,
                            fi_holds: torsion_zero,
                        },
                    );
                }
            }
            let is_nijenhuis = check.is_nijenhuis();
            let mut details = json!({
                "kind": "pair",
                "torsion_first_vanishes": check.torsion_first_vanishes,
                "torsion_second_vanishes": check.torsion_second_vanishes,
                "pencil_samples": check.pencil_samples,
                "pencil_identity_holds": check.pencil_identity_holds,
                "is_nijenhuis": is_nijenhuis,
            });
            if is_nijenhuis {
                let deformed = deformed_compatible_pair(&pair, &n)?;
                let data = trivial_deformation_from_nijenhuis(&pair, &n)?;
                let order2 = order2_check(&pair, &data)?;
                let triviality = triviality_check(&pair, &data, &n)?;
                let extras = json!({
                    "deformed_pair_compatible": deformed.validate()?.is_compatible(),
                    "generated_deformation": io::deformation_to_file(&data),
                    "order2_blocks": order2.blocks,
                    "order2_all_hold": order2.all_hold(),
                    "triviality_equations": triviality.equations,
                    "triviality_all_hold": triviality.all_hold(),
                });
                details
                    .as_object_mut()
                    .unwrap()
                    .extend(extras.as_object().unwrap().clone());
            }
            Ok(report.verdict(is_nijenhuis).details(&details))
        }
    }
}

fn deform_order2(pair_path: &Path, deformation: &Path) -> Result<Report> {
    let (pair_loaded, pair) = load_pair(pair_path)?;
    let def_loaded = load(deformation)?;
    let data = parse_deformation(&def_loaded.text)?;
    check_deformation_dims(&pair, &data)?;
    if data.omega1_tilde.is_none() || data.omega2_tilde.is_none() {
        bail!("order-2 check needs omega1_tilde and omega2_tilde");
    }
    let result = order2_check(&pair, &data)?;
    Ok(Report::new("deform-order2")
        .input(&pair_loaded.path, &pair_loaded.bytes)
        .input(&def_loaded.path, &def_loaded.bytes)
        .verdict(result.all_hold())
        .details(&json!({
            "blocks": result.blocks,
            "all_hold": result.all_hold(),
        })))
}

fn load_extension(
    path: &Path,
) -> Result<(Loaded, CompatiblePair, CompatibleRepresentation, io::ExtensionInput)> {
    let loaded = load(path)?;
    let input = parse_extension(&loaded.text)?;
    if !input.base.validate()?.is_compatible() {
        bail!("{}: base is not a compatible pair", loaded.path);
    }
    if !input.rep.validate(&input.base)?.is_valid() {
        bail!("{}: representation fails its axioms", loaded.path);
    }
    let base = input.base.clone();
    let rep = input.rep.clone();
    Ok((loaded, base, rep, input))
}

fn extension_build(path: &Path) -> Result<Report> {
    let (loaded, base, rep, input) = load_extension(path)?;
    let report = Report::new("extension-build").input(&loaded.path, &loaded.bytes);
    match build_extension(&base, &rep, &input.omega1, &input.omega2) {
        Ok(ext) => Ok(report.verdict(true).details(&json!({
            "built": true,
            "total_dim": ext.total().dim(),
            "total_compatible": true,
            "cocycle": { "eq_first": true, "eq_mixed": true, "eq_second": true },
        }))),
        Err(ExtensionError::NotCocycle {
            eq_first,
            eq_mixed,
            eq_second,
        }) => Ok(report.verdict(false).details(&json!({
            "built": false,
            "cocycle": {
                "eq_first": eq_first,
                "eq_mixed": eq_mixed,
                "eq_second": eq_second,
            },
        }))),
        Err(e) => Err(e.into()),
    }
}

fn extension_extract(path: &Path, section_path: &Path) -> Result<Report> {
    let (loaded, base, rep, input) = load_extension(path)?;
    let ext = build_extension(&base, &rep, &input.omega1, &input.omega2)
        .map_err(|e| anyhow!("extension does not build: {e}"))?;
    let section_loaded = load(section_path)?;
    let sigma_matrix = parse_matrix(&section_loaded.text)?;
    let dims = SplitDims {
        base: base.dim(),
        fiber: rep.module_dim(),
    };
    let sigma = Section::new(sigma_matrix, dims)?;
    let induced = induced_representation(ext.total(), base.dim(), &sigma)?;
    let (w1, w2) = extract_cocycle(ext.total(), base.dim(), &sigma)?;
    Ok(Report::new("extension-extract")
        .input(&loaded.path, &loaded.bytes)
        .input(&section_loaded.path, &section_loaded.bytes)
        .verdict(true)
        .details(&json!({
            "induced_rep": compatible_rep_to_file(&induced),
            "induced_matches_input": induced == rep,
            "omega1": cochain_to_file(&w1),
            "omega2": cochain_to_file(&w2),
        })))
}

fn extension_classify(first: &Path, second: &Path) -> Result<Report> {
    let (loaded1, base1, rep1, input1) = load_extension(first)?;
    let (loaded2, _base2, _rep2, input2) = load_extension(second)?;
    let e1 = build_extension(&base1, &rep1, &input1.omega1, &input1.omega2)
        .map_err(|e| anyhow!("first extension does not build: {e}"))?;
    let e2 = build_extension(&input2.base, &input2.rep, &input2.omega1, &input2.omega2)
        .map_err(|e| anyhow!("second extension does not build: {e}"))?;
    let report = Report::new("extension-classify")
        .input(&loaded1.path, &loaded1.bytes)
        .input(&loaded2.path, &loaded2.bytes);
    match classify(&e1, &e2)? {
        ClassifyOutcome::Isomorphic { tau, theta } => Ok(report.verdict(true).details(&json!({
            "isomorphic": true,
            "tau": matrix_to_file(&tau).matrix,
            "theta": matrix_to_file(&theta).matrix,
            "certificate": null,
        }))),
        ClassifyOutcome::NotIsomorphic(cert) => Ok(report.verdict(false).details(&json!({
            "isomorphic": false,
            "tau": null,
            "certificate": cert,
        }))),
    }
}

/// Entry point used by the binary.
pub fn execute(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.verdict {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                let payload = json!({ "error": format!("{e:#}") });
                eprintln!("{}", serde_json::to_string_pretty(&payload).expect("serializes"));
            } else {
                eprintln!("error: {e:#}");
            }
            2
        }
    }
}
