use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Parser)]
#[command(name = "cremona", version, about = "Exact computations with plane Cremona transformations")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Use the modular method for degree sequences.
    #[arg(long, global = true)]
    pub modular: bool,
    /// Upper bound on iteration counts and powers.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_iter: u32,
    /// Number of independent primes for the modular method.
    #[arg(long, global = true, default_value_t = 2)]
    pub primes: usize,
}

#[derive(Debug, Clone, Args)]
pub struct MapArg {
    /// Map file: `f0; f1; f2`.
    #[arg(short = 'm', long = "map")]
    pub map: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArg {
    /// Curve file: `F = ...` and `sing = x,y,z : m` lines.
    #[arg(short = 'c', long = "curve")]
    pub curve: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct PointsArg {
    /// Point-list file, one `x,y,z` per line.
    #[arg(short = 'P', long = "points")]
    pub points: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Composition `a ∘ b`.
    Compose {
        #[arg(short = 'a')]
        a: PathBuf,
        #[arg(short = 'b')]
        b: PathBuf,
    },
    /// The k-th iterate.
    Power {
        #[command(flatten)]
        map: MapArg,
        #[arg(short = 'k')]
        k: u32,
    },
    /// Image of a point, given as `x,y,z`.
    Apply {
        #[command(flatten)]
        map: MapArg,
        #[arg(short = 'p', allow_hyphen_values = true)]
        point: String,
    },
    /// Checks that two maps are mutually inverse.
    InverseCheck {
        #[command(flatten)]
        map: MapArg,
        #[arg(short = 'i', long = "inverse")]
        inverse: PathBuf,
    },
    /// The curve of fixed points.
    FixedCurve {
        #[command(flatten)]
        map: MapArg,
    },
    /// Proper rational base points with multiplicities.
    Basepoints {
        #[command(flatten)]
        map: MapArg,
    },
    /// Homaloidal identities for the degree and base multiplicities.
    Homaloidal {
        #[command(flatten)]
        map: MapArg,
        /// Declared multiplicities; computed from the base points if absent.
        #[arg(long, value_delimiter = ',')]
        mults: Option<Vec<u32>>,
    },
    /// Whether the map preserves the curve; prints the cofactor.
    Preserves {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Whether the map fixes the curve pointwise.
    Fixes {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Strict transform of the curve.
    Image {
        #[command(flatten)]
        map: MapArg,
        #[arg(short = 'i', long = "inverse")]
        inverse: PathBuf,
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Geometric genus from the declared ordinary singularities.
    Genus {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// The adjoint system.
    Adjoint {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Iterated adjoint systems.
    AdjointTower {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Forms of degree d with the given multiplicity at each point.
    Linsys {
        #[arg(short = 'd')]
        degree: u32,
        #[command(flatten)]
        points: PointsArg,
        #[arg(long, default_value_t = 1)]
        mult: u32,
    },
    /// Base-point theorem check for a map preserving the curve.
    BpTheorem {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        curve: CurveArg,
        /// Degree bound for the image curve; defaults to the curve degree.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Curves of degree 3n with multiplicity n at nine points.
    HalphenCheck {
        #[command(flatten)]
        points: PointsArg,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Whether the curve is a verified ten-nodal sextic.
    CobleCheck {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// An element of the de Jonquières torus of `y^2 = h(x)`, as a map.
    Dejonq {
        #[arg(long)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
        /// Print the affine chart instead of the plane map.
        #[arg(long)]
        affine: bool,
    },
    /// Lift of a Möbius automorphism of `y^2 = h(x)`.
    ExtendAuto {
        #[arg(long)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        eps: i32,
    },
    /// Ninth base point of the cubic pencil through eight points.
    NinthPoint {
        #[command(flatten)]
        points: PointsArg,
    },
    /// Geiser image of a point for seven points.
    GeiserPoint {
        #[command(flatten)]
        points: PointsArg,
        #[arg(short = 'p', allow_hyphen_values = true)]
        point: String,
    },
    /// The Geiser involution of seven points as a map.
    GeiserMap {
        #[command(flatten)]
        points: PointsArg,
    },
    /// Bertini image of a point for eight points.
    BertiniPoint {
        #[command(flatten)]
        points: PointsArg,
        #[arg(short = 'p', allow_hyphen_values = true)]
        point: String,
    },
    /// Degrees of the iterates as CSV.
    Degseq {
        #[command(flatten)]
        map: MapArg,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Growth class and dynamical degree estimate.
    Dyndeg {
        #[command(flatten)]
        map: MapArg,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Runs every case listed in `<dir>/corpus.txt`.
    Corpus {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}
