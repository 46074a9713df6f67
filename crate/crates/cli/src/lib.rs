//! Command-line surface: argument definitions, verb dispatch, reports and
//! the seeded selftest corpus.

use clap::{Parser, Subcommand};
use std::path::PathBuf;

pub mod report;
pub mod run;
pub mod search;
pub mod selftest;

#[derive(Debug, Parser)]
#[command(
    name = "trilie",
    about = "Exact computations with 3-Lie algebras and compatible pairs",
    long_about = "Validates 3-Lie brackets and compatible pairs, computes cohomology of \
                  the associated complexes, checks deformations and Nijenhuis operators, \
                  and builds and classifies abelian extensions. All arithmetic is exact \
                  rational; reports are deterministic."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra (Fundamental Identity) or a pair (compatibility)
    Validate { input: PathBuf },
    /// Cohomology dimensions of an algebra complex or a pair bicomplex
    Cohomology {
        input: PathBuf,
        /// Highest degree to report (bounded by TRILIE_MAX_DEGREE, default 4)
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Coefficient representation file (default: adjoint / self)
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// Force adjoint coefficients (the default when --coeffs is absent)
        #[arg(long)]
        adjoint: bool,
        /// Use the pair-skew-only cochain spaces instead of the fully skew ones
        #[arg(long = "raw-complex")]
        raw_complex: bool,
    },
    /// Basis of derivations (of one bracket, or of both simultaneously)
    Derivations { input: PathBuf },
    /// The three bracket conditions a compatible pair must satisfy
    McCheck { input: PathBuf },
    /// Degree-2 cocycle check for an infinitesimal deformation
    DeformCheck { pair: PathBuf, deformation: PathBuf },
    /// Equivalence of two infinitesimal deformations, with witness
    DeformEquivalent {
        pair: PathBuf,
        first: PathBuf,
        second: PathBuf,
    },
    /// Nijenhuis operator checks and the deformation data they generate
    Nijenhuis {
        input: PathBuf,
        operator: PathBuf,
        /// Extra random pencil sample points beyond the fixed grid
        #[arg(long, default_value_t = 0)]
        grid: usize,
        /// Seed for the extra sample points
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The twelve order-2 deformation equations
    DeformOrder2 { pair: PathBuf, deformation: PathBuf },
    /// Build an abelian extension from cocycle data
    ExtensionBuild { extension: PathBuf },
    /// Extract the representation and cocycle of an extension via a section
    ExtensionExtract { extension: PathBuf, section: PathBuf },
    /// Decide whether two extensions are isomorphic
    ExtensionClassify { first: PathBuf, second: PathBuf },
    /// Run the seeded property-law corpus
    Selftest {
        /// Seed for the random inputs (laws never depend on it)
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}
