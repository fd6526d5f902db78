use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

const COORDS_HELP: &str = "\
Coordinates:
  A1  weights as a single integer in fundamental-weight units (spin j is 2j)
  A2  weights as Dynkin labels a,b
  U2  weights as (l1,l2) with l1 >= l2 dominant
Lattice-path points gamma are given in the coordinates of the step-set file.
In group mode the targets are weights nu of the tensor power, and the
lattice point is nu - N*lambda expressed in the root lattice.";

#[derive(Debug, Parser)]
#[command(name = "latpath", version, about = "Exact and asymptotic lattice-path multiplicities", after_help = COORDS_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep (N, target) cells and compare the exact count with the asymptotic estimators.
    Compare(CompareArgs),
    /// Tabulate the rate function, delta and det A on a grid in the interior of the polytope.
    RateProfile(RateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Step-set JSON file: {"dim": m, "steps": [{"coords": [...], "weight": 1 | "p/q"}]}.
    #[arg(long, conflicts_with_all = ["group", "lambda"])]
    pub steps: Option<PathBuf>,
    /// Group name: A1 (SU2), A2 (SU3) or U2.
    #[arg(long, requires = "lambda")]
    pub group: Option<String>,
    /// Dominant highest weight, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Newton tolerance on the gradient residual.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Maximum number of cells in an exact coefficient table.
    #[arg(long, default_value_t = latpath::exact::DEFAULT_MEM_CAP)]
    pub mem_cap: u128,
    /// Worker threads; 0 uses one per logical core.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EstimatorName {
    Exact,
    Cl,
    Md,
    Sd,
    IrredSd,
    IrredCl,
    Rate,
}

impl EstimatorName {
    pub fn label(self) -> &'static str {
        match self {
            EstimatorName::Exact => "exact",
            EstimatorName::Cl => "CL",
            EstimatorName::Md => "MD",
            EstimatorName::Sd => "SD",
            EstimatorName::IrredSd => "irredSD",
            EstimatorName::IrredCl => "irredCL",
            EstimatorName::Rate => "rate",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "exact" => EstimatorName::Exact,
            "cl" => EstimatorName::Cl,
            "md" => EstimatorName::Md,
            "sd" => EstimatorName::Sd,
            "irredsd" => EstimatorName::IrredSd,
            "irredcl" => EstimatorName::IrredCl,
            "rate" => EstimatorName::Rate,
            other => bail!("unknown estimator {other:?}"),
        })
    }
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Ascending list of path lengths, e.g. 8,16,32.
    #[arg(long = "N", value_name = "LIST")]
    pub n: String,
    /// Ray N*A + F given as A:F (or a flat list of 2m integers); in group mode A is a weight.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["points", "grid_radius"])]
    pub ray: Option<String>,
    /// Explicit targets separated by ';', e.g. "0;2;4" or "1,0;2,-1".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid_radius")]
    pub points: Option<String>,
    /// All support-admissible points within R*sqrt(N) of N times the center of mass.
    #[arg(long, value_name = "R")]
    pub grid_radius: Option<f64>,
    /// Subset of exact,CL,MD,SD,irredSD,irredCL,rate.
    #[arg(long, default_value = "exact,CL,MD,SD")]
    pub estimators: String,
    /// Central-limit cutoff: CL when |d| <= cl_cut*sqrt(N).
    #[arg(long, default_value_t = 3.0)]
    pub cl_cut: f64,
    /// Moderate-deviation cutoff constant: MD when |d| <= md_cut*N^md_smax.
    #[arg(long, default_value_t = 1.0)]
    pub md_cut: f64,
    /// Moderate-deviation exponent.
    #[arg(long, default_value_t = 0.75)]
    pub md_smax: f64,
    #[command(flatten)]
    pub common: SolverArgs,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Grid points per coordinate (at least 2).
    #[arg(long, default_value_t = 9)]
    pub grid_points: usize,
    /// Adds the empirical column -(1/N) log(m_N / V^N) for this N.
    #[arg(long)]
    pub exact_n: Option<u64>,
    #[command(flatten)]
    pub common: SolverArgs,
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .with_context(|| format!("not an integer: {t:?}"))
        })
        .collect()
}

pub fn parse_n_list(s: &str) -> Result<Vec<u64>> {
    let ns: Vec<u64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .with_context(|| format!("not a path length: {t:?}"))
        })
        .collect::<Result<_>>()?;
    if ns.is_empty() || ns.contains(&0) {
        bail!("--N needs positive path lengths");
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        bail!("--N must be strictly ascending");
    }
    Ok(ns)
}

pub fn parse_estimators(s: &str) -> Result<Vec<EstimatorName>> {
    let mut list: Vec<EstimatorName> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(EstimatorName::parse)
        .collect::<Result<_>>()?;
    list.sort();
    list.dedup();
    if list.is_empty() {
        bail!("--estimators needs at least one estimator");
    }
    Ok(list)
}

pub fn parse_points(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(parse_ints).collect()
}

/// Splits `A:F` or a flat list of `2m` integers into `(A, F)`.
pub fn parse_ray(s: &str, dim: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    let (a, f) = match s.split_once(':') {
        Some((a, f)) => (parse_ints(a)?, parse_ints(f)?),
        None => {
            let v = parse_ints(s)?;
            if v.len() != 2 * dim {
                bail!("--ray expects {} integers (A then F), got {}", 2 * dim, v.len());
            }
            (v[..dim].to_vec(), v[dim..].to_vec())
        }
    };
    if a.len() != dim || f.len() != dim {
        bail!("--ray components must have length {dim}");
    }
    Ok((a, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_forms() {
        assert_eq!(parse_ray("1,0", 1).unwrap(), (vec![1], vec![0]));
        assert_eq!(parse_ray("1,1:0,-1", 2).unwrap(), (vec![1, 1], vec![0, -1]));
        assert!(parse_ray("1,2,3", 1).is_err());
    }

    #[test]
    fn n_list_must_ascend() {
        assert_eq!(parse_n_list("8, 16,32").unwrap(), vec![8, 16, 32]);
        assert!(parse_n_list("16,8").is_err());
        assert!(parse_n_list("0,1").is_err());
    }

    #[test]
    fn estimator_names() {
        let e = parse_estimators("SD,exact,irredsd,SD").unwrap();
        assert_eq!(e, vec![EstimatorName::Exact, EstimatorName::Sd, EstimatorName::IrredSd]);
        assert!(parse_estimators("foo").is_err());
    }
}
