use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ranklab::budget::{DEFAULT_CODEWORD_BUDGET, DEFAULT_SUBSPACE_BUDGET};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "rank-lab", version, about = "Scattered subspaces and MRD rank-metric codes")]
pub struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized verbs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest brute-force scan over codewords or vectors.
    #[arg(long, global = true, default_value_t = DEFAULT_CODEWORD_BUDGET)]
    pub codeword_budget: u64,
    /// Largest scan over subspaces or projective points.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSPACE_BUDGET)]
    pub subspace_budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// `r,n,h` for the pseudoregulus construction.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Triple(pub usize, pub usize, pub usize);

pub fn parse_triple(s: &str) -> Result<Triple, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b, c] => Ok(Triple(a, b, c)),
        _ => Err(format!("expected three comma-separated integers, got {s:?}")),
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SubspaceSource {
    /// Subspace JSON file.
    #[arg(long)]
    pub subspace: Option<PathBuf>,
    /// Direct sum of pseudoregulus blocks, given as r,n,h.
    #[arg(long, value_parser = parse_triple, conflicts_with = "subspace")]
    pub pseudoregulus: Option<Triple>,
    /// Field size q for --pseudoregulus.
    #[arg(long, default_value_t = 2)]
    pub q: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CodeSource {
    /// Rank-metric code JSON file.
    #[arg(long)]
    pub code: Option<PathBuf>,
    /// Gabidulin code given as N,k,s.
    #[arg(long, value_parser = parse_triple, conflicts_with = "code")]
    pub gabidulin: Option<Triple>,
    /// Field size q for --gabidulin.
    #[arg(long, default_value_t = 2)]
    pub q: u64,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generalized Gabidulin code G_(k,s) on F_(q^N).
    Gabidulin {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Enumerate the code and check that it is MRD.
        #[arg(long)]
        mrd_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generalized twisted Gabidulin code H_(k,s)(η, c).
    TwistedGabidulin {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// η as an element encoding of F_(q^N) (base-q digits).
        #[arg(long)]
        eta: u32,
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        mrd_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The code C_(U,G) of a subspace U.
    Cug {
        #[command(flatten)]
        #[serde(flatten)]
        src: SubspaceSource,
        #[arg(long)]
        mrd_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recovers U from an MRD code whose right idealiser has order q^n.
    ExtractSubspace {
        #[command(flatten)]
        #[serde(flatten)]
        src: CodeSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random search for an h-scattered subspace of dimension k.
    SearchScattered {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Time budget in seconds.
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        #[arg(long, default_value_t = 8)]
        chains: usize,
        #[arg(long)]
        max_rounds: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether U is h-scattered, with ι and the dimension bound.
    ScatteredCheck {
        #[command(flatten)]
        #[serde(flatten)]
        src: SubspaceSource,
        #[arg(long)]
        h: usize,
    },
    /// Ordinary (trace) or Delsarte dual of U.
    Dualize {
        #[command(flatten)]
        #[serde(flatten)]
        src: SubspaceSource,
        #[arg(long, conflicts_with = "delsarte", required_unless_present = "delsarte")]
        ordinary: bool,
        #[arg(long)]
        delsarte: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distance and MRD check by enumeration.
    MrdCheck {
        #[command(flatten)]
        #[serde(flatten)]
        src: CodeSource,
    },
    /// Rank distribution by enumeration, with the MRD closed form.
    RankDist {
        #[command(flatten)]
        #[serde(flatten)]
        src: CodeSource,
    },
    /// MacWilliams identities between a code and its Delsarte dual.
    Macwilliams {
        #[command(flatten)]
        #[serde(flatten)]
        src: CodeSource,
    },
    /// Left or right idealiser.
    Idealiser {
        #[command(flatten)]
        #[serde(flatten)]
        src: CodeSource,
        #[arg(long, conflicts_with = "right", required_unless_present = "right")]
        left: bool,
        #[arg(long)]
        right: bool,
    },
    /// Delsarte dual of a code.
    DualizeCode {
        #[command(flatten)]
        #[serde(flatten)]
        src: CodeSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// {A M : M in C} for a matrix A read from JSON.
    Puncture {
        #[command(flatten)]
        #[serde(flatten)]
        src: CodeSource,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariant-based inequivalence certificate for two codes.
    CertifyInequivalent {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Whether a maximum h-scattered code is new with respect to punctured
    /// generalized (twisted) Gabidulin codes.
    Exclusion {
        #[command(flatten)]
        #[serde(flatten)]
        src: CodeSource,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        h: usize,
    },
    /// Points of the linear set L_U with their weights.
    LinsetPoints {
        #[command(flatten)]
        #[serde(flatten)]
        src: SubspaceSource,
    },
    /// Hyperplane counts by weight for a maximum h-scattered U.
    HyperplaneSpectrum {
        #[command(flatten)]
        #[serde(flatten)]
        src: SubspaceSource,
        /// Defaults to h of --pseudoregulus.
        #[arg(long)]
        h: Option<usize>,
    },
    /// Hamming code of the projective system L_U.
    ProjsysCode {
        #[command(flatten)]
        #[serde(flatten)]
        src: SubspaceSource,
        #[arg(long)]
        h: Option<usize>,
        /// Compute the weight enumerator by enumeration.
        #[arg(long)]
        enumerator: bool,
        /// Count every codeword instead of one per hyperplane.
        #[arg(long)]
        codeword_count: bool,
    },
    /// Hamming code whose columns are an F_q-basis of U.
    QsystemCode {
        #[command(flatten)]
        #[serde(flatten)]
        src: SubspaceSource,
        #[arg(long)]
        h: Option<usize>,
    },
    /// Writes the fixture corpus under DIR/v1.
    Fixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gabidulin { .. } => "gabidulin",
            Command::TwistedGabidulin { .. } => "twisted-gabidulin",
            Command::Cug { .. } => "cug",
            Command::ExtractSubspace { .. } => "extract-subspace",
            Command::SearchScattered { .. } => "search-scattered",
            Command::ScatteredCheck { .. } => "scattered-check",
            Command::Dualize { .. } => "dualize",
            Command::MrdCheck { .. } => "mrd-check",
            Command::RankDist { .. } => "rank-dist",
            Command::Macwilliams { .. } => "macwilliams",
            Command::Idealiser { .. } => "idealiser",
            Command::DualizeCode { .. } => "dualize-code",
            Command::Puncture { .. } => "puncture",
            Command::CertifyInequivalent { .. } => "certify-inequivalent",
            Command::Exclusion { .. } => "exclusion",
            Command::LinsetPoints { .. } => "linset-points",
            Command::HyperplaneSpectrum { .. } => "hyperplane-spectrum",
            Command::ProjsysCode { .. } => "projsys-code",
            Command::QsystemCode { .. } => "qsystem-code",
            Command::Fixtures { .. } => "fixtures",
        }
    }
}
