//! File formats: JSON with all scalars as exact-rational strings and
//! 1-based basis indices. Parsing canonicalizes indices (sorting with
//! sign absorption), validates ranges, and rejects duplicate canonical
//! keys; serialization always emits canonical keys in deterministic
//! order.

use crate::cochain::{canonical_pair, canonical_triple, triple_list, Cochain, Idx, PreCochain};
use crate::compatible::{CompatiblePair, CompatibleRepresentation, DeformationData};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::three_lie::{Representation, ThreeLieAlgebra};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {message}")]
pub struct FormatError {
    pub location: String,
    pub message: String,
}

fn err(location: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError {
        location: location.into(),
        message: message.into(),
    }
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| err(what, e.to_string()))
}

fn idx_from_one_based(value: usize, dim: usize, location: &str) -> Result<Idx, FormatError> {
    if value == 0 || value > dim {
        return Err(err(
            location,
            format!("index {value} out of range 1..={dim}"),
        ));
    }
    Ok((value - 1) as Idx)
}

// ---------------------------------------------------------------- algebra

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleEntryFile {
    pub triple: [usize; 3],
    /// sparse output vector: 1-based basis index (as a string key) -> scalar
    pub value: BTreeMap<String, Scalar>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub bracket: Vec<TripleEntryFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    pub dim: usize,
    pub bracket1: Vec<TripleEntryFile>,
    pub bracket2: Vec<TripleEntryFile>,
}

fn bracket_from_entries(
    dim: usize,
    entries: &[TripleEntryFile],
    location: &str,
) -> Result<Cochain, FormatError> {
    let mut seen: HashSet<(Idx, Idx, Idx)> = HashSet::new();
    let mut terms = Vec::new();
    for (i, entry) in entries.iter().enumerate() {
        let loc = format!("{location}[{i}]");
        let a = idx_from_one_based(entry.triple[0], dim, &loc)?;
        let b = idx_from_one_based(entry.triple[1], dim, &loc)?;
        let c = idx_from_one_based(entry.triple[2], dim, &loc)?;
        let Some(((t1, t2, t3), sign)) = canonical_triple(a, b, c) else {
            return Err(err(&loc, format!("triple {:?} repeats an index", entry.triple)));
        };
        if !seen.insert((t1, t2, t3)) {
            return Err(err(
                &loc,
                format!(
                    "duplicate canonical triple [{},{},{}]",
                    t1 + 1,
                    t2 + 1,
                    t3 + 1
                ),
            ));
        }
        let mut value = vec![Scalar::zero(); dim];
        for (k, v) in &entry.value {
            let component: usize = k
                .parse()
                .map_err(|_| err(&loc, format!("bad component index {k:?}")))?;
            let ci = idx_from_one_based(component, dim, &loc)?;
            value[ci as usize] = if sign == 1 { v.clone() } else { -v };
        }
        terms.push((vec![], (t1, t2, t3), value));
    }
    Cochain::from_triple_terms(1, dim, dim, terms)
        .map_err(|e| err(location, e.to_string()))
}

fn bracket_to_entries(bracket: &Cochain) -> Vec<TripleEntryFile> {
    let dim = bracket.ambient_dim();
    let mut out = Vec::new();
    for &(a, b, c) in &triple_list(dim) {
        let value = bracket.eval(&[a, b, c]);
        if value.iter().all(Scalar::is_zero) {
            continue;
        }
        let mut map = BTreeMap::new();
        for (i, v) in value.iter().enumerate() {
            if !v.is_zero() {
                map.insert((i + 1).to_string(), v.clone());
            }
        }
        out.push(TripleEntryFile {
            triple: [a as usize + 1, b as usize + 1, c as usize + 1],
            value: map,
        });
    }
    out
}

pub fn parse_algebra(text: &str) -> Result<ThreeLieAlgebra, FormatError> {
    let file: AlgebraFile = parse_json(text, "algebra file")?;
    let bracket = bracket_from_entries(file.dim, &file.bracket, "bracket")?;
    ThreeLieAlgebra::new(file.dim, bracket).map_err(|e| err("algebra file", e.to_string()))
}

pub fn algebra_to_file(alg: &ThreeLieAlgebra) -> AlgebraFile {
    AlgebraFile {
        dim: alg.dim(),
        bracket: bracket_to_entries(alg.bracket()),
    }
}

pub fn parse_pair(text: &str) -> Result<CompatiblePair, FormatError> {
    let file: PairFile = parse_json(text, "pair file")?;
    let b1 = bracket_from_entries(file.dim, &file.bracket1, "bracket1")?;
    let b2 = bracket_from_entries(file.dim, &file.bracket2, "bracket2")?;
    CompatiblePair::from_brackets(b1, b2).map_err(|e| err("pair file", e.to_string()))
}

pub fn pair_to_file(pair: &CompatiblePair) -> PairFile {
    PairFile {
        dim: pair.dim(),
        bracket1: bracket_to_entries(pair.first().bracket()),
        bracket2: bracket_to_entries(pair.second().bracket()),
    }
}

/// Either a single algebra file or a pair file, told apart by their keys.
pub enum AlgebraInput {
    Single(ThreeLieAlgebra),
    Pair(CompatiblePair),
}

pub fn parse_algebra_or_pair(text: &str) -> Result<AlgebraInput, FormatError> {
    let value: serde_json::Value = parse_json(text, "input file")?;
    if value.get("bracket1").is_some() {
        Ok(AlgebraInput::Pair(parse_pair(text)?))
    } else if value.get("bracket").is_some() {
        Ok(AlgebraInput::Single(parse_algebra(text)?))
    } else {
        Err(err(
            "input file",
            "expected a \"bracket\" (algebra) or \"bracket1\"/\"bracket2\" (pair) field",
        ))
    }
}

// ---------------------------------------------------------- representation

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairMatrixFile {
    pub pair: [usize; 2],
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepFile {
    pub module_dim: usize,
    pub rho: Vec<PairMatrixFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<PairMatrixFile>>,
}

fn action_from_entries(
    algebra_dim: usize,
    module_dim: usize,
    entries: &[PairMatrixFile],
    location: &str,
) -> Result<Representation, FormatError> {
    let mut rep = Representation::zero(algebra_dim, module_dim);
    let mut seen: HashSet<(Idx, Idx)> = HashSet::new();
    for (i, entry) in entries.iter().enumerate() {
        let loc = format!("{location}[{i}]");
        let a = idx_from_one_based(entry.pair[0], algebra_dim, &loc)?;
        let b = idx_from_one_based(entry.pair[1], algebra_dim, &loc)?;
        let Some(((p, q), sign)) = canonical_pair(a, b) else {
            return Err(err(&loc, format!("pair {:?} repeats an index", entry.pair)));
        };
        if !seen.insert((p, q)) {
            return Err(err(
                &loc,
                format!("duplicate canonical pair [{},{}]", p + 1, q + 1),
            ));
        }
        if entry.matrix.len() != module_dim
            || entry.matrix.iter().any(|row| row.len() != module_dim)
        {
            return Err(err(&loc, format!("matrix must be {module_dim}x{module_dim}")));
        }
        let mut m = Matrix::from_rows(entry.matrix.clone());
        if sign == -1 {
            m = m.neg();
        }
        rep.set_pair(p, q, m);
    }
    Ok(rep)
}

fn action_to_entries(rep: &Representation) -> Vec<PairMatrixFile> {
    let d = rep.algebra_dim();
    let m = rep.module_dim();
    let mut out = Vec::new();
    for (a, b) in crate::cochain::pair_list(d) {
        let matrix = rep.pair_matrix(a, b);
        if matrix.is_zero() {
            continue;
        }
        out.push(PairMatrixFile {
            pair: [a as usize + 1, b as usize + 1],
            matrix: (0..m)
                .map(|r| matrix.row(r).to_vec())
                .collect(),
        });
    }
    out
}

/// Parses a representation file. A file with only `rho` describes a
/// single-bracket representation; with `mu` as well, a compatible one.
pub enum RepInput {
    Single(Representation),
    Pair(CompatibleRepresentation),
}

pub fn parse_rep(text: &str, algebra_dim: usize) -> Result<RepInput, FormatError> {
    let file: RepFile = parse_json(text, "representation file")?;
    let rho = action_from_entries(algebra_dim, file.module_dim, &file.rho, "rho")?;
    match &file.mu {
        None => Ok(RepInput::Single(rho)),
        Some(entries) => {
            let mu = action_from_entries(algebra_dim, file.module_dim, entries, "mu")?;
            Ok(RepInput::Pair(
                CompatibleRepresentation::new(rho, mu)
                    .map_err(|e| err("representation file", e.to_string()))?,
            ))
        }
    }
}

pub fn compatible_rep_to_file(rep: &CompatibleRepresentation) -> RepFile {
    RepFile {
        module_dim: rep.module_dim(),
        rho: action_to_entries(&rep.rho),
        mu: Some(action_to_entries(&rep.mu)),
    }
}

// ---------------------------------------------------------------- cochain

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainEntryFile {
    #[serde(default)]
    pub pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "final")]
    pub final_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<[usize; 3]>,
    pub value: Vec<Scalar>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainFile {
    pub weight: usize,
    pub ambient_dim: usize,
    pub target_dim: usize,
    pub entries: Vec<CochainEntryFile>,
}

fn cochain_from_file(file: &CochainFile, location: &str) -> Result<Cochain, FormatError> {
    let (w, d, m) = (file.weight, file.ambient_dim, file.target_dim);
    let mut pre = PreCochain::zero(w, d, m);
    let mut seen_raw: HashSet<Vec<Idx>> = HashSet::new();
    let mut seen_triple: HashSet<Vec<Idx>> = HashSet::new();
    for (i, entry) in file.entries.iter().enumerate() {
        let loc = format!("{location}.entries[{i}]");
        if entry.value.len() != m {
            return Err(err(&loc, format!("value must have length {m}")));
        }
        let mut pair_args: Vec<Idx> = Vec::with_capacity(2 * w);
        let mut sign = 1i8;
        for &[a, b] in &entry.pairs {
            let a = idx_from_one_based(a, d, &loc)?;
            let b = idx_from_one_based(b, d, &loc)?;
            let Some(((p, q), s)) = canonical_pair(a, b) else {
                return Err(err(&loc, format!("pair [{a},{b}] repeats an index")));
            };
            sign *= s;
            pair_args.push(p);
            pair_args.push(q);
        }
        match (entry.final_index, entry.triple) {
            (Some(fin), None) => {
                if entry.pairs.len() != w {
                    return Err(err(&loc, format!("expected {w} pairs for a raw entry")));
                }
                let fin = idx_from_one_based(fin, d, &loc)?;
                let mut key = pair_args.clone();
                key.push(fin);
                if !seen_raw.insert(key.clone()) {
                    return Err(err(&loc, "duplicate canonical key"));
                }
                pre.add_term(&key, sign, &entry.value);
            }
            (None, Some([a, b, c])) => {
                if w == 0 {
                    return Err(err(&loc, "weight-0 entries use \"final\", not \"triple\""));
                }
                if entry.pairs.len() != w - 1 {
                    return Err(err(
                        &loc,
                        format!("expected {} pairs for a triple entry", w - 1),
                    ));
                }
                let a = idx_from_one_based(a, d, &loc)?;
                let b = idx_from_one_based(b, d, &loc)?;
                let c = idx_from_one_based(c, d, &loc)?;
                let Some(((t1, t2, t3), s)) = canonical_triple(a, b, c) else {
                    return Err(err(&loc, "triple repeats an index"));
                };
                sign *= s;
                let mut dedupe = pair_args.clone();
                dedupe.extend([t1, t2, t3]);
                if !seen_triple.insert(dedupe) {
                    return Err(err(&loc, "duplicate canonical key"));
                }
                // expand the fully skew triple into its three raw keys
                for (pa, pb, fin, tsign) in
                    [(t1, t2, t3, 1i8), (t1, t3, t2, -1), (t2, t3, t1, 1)]
                {
                    let mut key = pair_args.clone();
                    key.push(pa);
                    key.push(pb);
                    key.push(fin);
                    pre.add_term(&key, sign * tsign, &entry.value);
                }
            }
            _ => {
                return Err(err(
                    &loc,
                    "exactly one of \"final\" and \"triple\" must be present",
                ))
            }
        }
    }
    Cochain::from_pre(pre).map_err(|e| err(location, e.to_string()))
}

pub fn parse_cochain(text: &str) -> Result<Cochain, FormatError> {
    let file: CochainFile = parse_json(text, "cochain file")?;
    cochain_from_file(&file, "cochain")
}

pub fn cochain_to_file(c: &Cochain) -> CochainFile {
    let (w, d, m) = (c.weight(), c.ambient_dim(), c.target_dim());
    let mut entries = Vec::new();
    if w == 0 {
        for x in 0..d {
            let value = c.eval(&[x as Idx]);
            if value.iter().all(Scalar::is_zero) {
                continue;
            }
            entries.push(CochainEntryFile {
                pairs: vec![],
                final_index: Some(x + 1),
                triple: None,
                value,
            });
        }
    } else {
        for key in crate::cochain::admissible_keys(w, d) {
            let value = c.eval(&key.args());
            if value.iter().all(Scalar::is_zero) {
                continue;
            }
            let crate::cochain::AdmissibleLast::Triple(a, b, t) = key.last else {
                unreachable!("positive weight keys end in a triple");
            };
            entries.push(CochainEntryFile {
                pairs: key
                    .pairs
                    .iter()
                    .map(|&(x, y)| [x as usize + 1, y as usize + 1])
                    .collect(),
                final_index: None,
                triple: Some([a as usize + 1, b as usize + 1, t as usize + 1]),
                value,
            });
        }
    }
    CochainFile {
        weight: w,
        ambient_dim: d,
        target_dim: m,
        entries,
    }
}

// ------------------------------------------------------------ deformation

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeformationFile {
    pub omega1: CochainFile,
    pub omega2: CochainFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1_tilde: Option<CochainFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega2_tilde: Option<CochainFile>,
}

pub fn parse_deformation(text: &str) -> Result<DeformationData, FormatError> {
    let file: DeformationFile = parse_json(text, "deformation file")?;
    Ok(DeformationData {
        omega1: cochain_from_file(&file.omega1, "omega1")?,
        omega2: cochain_from_file(&file.omega2, "omega2")?,
        omega1_tilde: file
            .omega1_tilde
            .as_ref()
            .map(|f| cochain_from_file(f, "omega1_tilde"))
            .transpose()?,
        omega2_tilde: file
            .omega2_tilde
            .as_ref()
            .map(|f| cochain_from_file(f, "omega2_tilde"))
            .transpose()?,
    })
}

pub fn deformation_to_file(data: &DeformationData) -> DeformationFile {
    DeformationFile {
        omega1: cochain_to_file(&data.omega1),
        omega2: cochain_to_file(&data.omega2),
        omega1_tilde: data.omega1_tilde.as_ref().map(cochain_to_file),
        omega2_tilde: data.omega2_tilde.as_ref().map(cochain_to_file),
    }
}

// -------------------------------------------------------------- extension

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub base: PairFile,
    pub rep: RepFile,
    pub omega1: CochainFile,
    pub omega2: CochainFile,
}

pub struct ExtensionInput {
    pub base: CompatiblePair,
    pub rep: CompatibleRepresentation,
    pub omega1: Cochain,
    pub omega2: Cochain,
}

pub fn parse_extension(text: &str) -> Result<ExtensionInput, FormatError> {
    let file: ExtensionFile = parse_json(text, "extension file")?;
    let base_json = serde_json::to_string(&file.base).expect("serializable");
    let base = parse_pair(&base_json)?;
    let rep_json = serde_json::to_string(&file.rep).expect("serializable");
    let rep = match parse_rep(&rep_json, base.dim())? {
        RepInput::Pair(r) => r,
        RepInput::Single(_) => {
            return Err(err(
                "extension file",
                "representation must carry both rho and mu",
            ))
        }
    };
    Ok(ExtensionInput {
        base,
        rep,
        omega1: cochain_from_file(&file.omega1, "omega1")?,
        omega2: cochain_from_file(&file.omega2, "omega2")?,
    })
}

// ----------------------------------------------------------------- matrix

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub matrix: Vec<Vec<Scalar>>,
}

pub fn parse_matrix(text: &str) -> Result<Matrix, FormatError> {
    let file: MatrixFile = parse_json(text, "matrix file")?;
    if file.matrix.is_empty() {
        return Err(err("matrix file", "matrix must not be empty"));
    }
    let cols = file.matrix[0].len();
    if file.matrix.iter().any(|r| r.len() != cols) {
        return Err(err("matrix file", "ragged rows"));
    }
    Ok(Matrix::from_rows(file.matrix))
}

pub fn matrix_to_file(m: &Matrix) -> MatrixFile {
    MatrixFile {
        matrix: (0..m.rows()).map(|r| m.row(r).to_vec()).collect(),
    }
}
