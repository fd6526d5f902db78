use anyhow::{bail, Result};
use latpath::dual::{invert_moment_map, log_total_weight};
use latpath::exact::CountOptions;
use latpath::{count_paths_with, Location, SolverOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::args::RateArgs;
use crate::output::{Field, Table};
use crate::source::Source;

/// Interior grid: `G` equally spaced points strictly inside the bounding box per axis,
/// kept when they are interior to the polytope.
fn grid(source: &Source, g: usize) -> Result<Vec<Vec<BigRational>>> {
    let s = source.step_set();
    let axes: Vec<Vec<BigRational>> = (0..s.dim())
        .map(|k| {
            let lo = s.steps().iter().map(|b| b[k]).min().unwrap();
            let hi = s.steps().iter().map(|b| b[k]).max().unwrap();
            (1..=g as i64)
                .map(|i| {
                    BigRational::from_integer(BigInt::from(lo))
                        + BigRational::new(BigInt::from((hi - lo) * i), BigInt::from(g as i64 + 1))
                })
                .collect()
        })
        .collect();
    let mut points: Vec<Vec<BigRational>> = vec![Vec::new()];
    for axis in &axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for p in points {
        if s.classify_point(&p)?.location == Location::Interior {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn run(args: &RateArgs) -> Result<Table> {
    if args.grid_points < 2 {
        bail!("--grid-points must be at least 2");
    }
    let source = Source::load(&args.source)?;
    let s = source.step_set();
    let opts = SolverOptions {
        tol: args.common.tol,
        ..SolverOptions::default()
    };
    let exact = match args.exact_n {
        Some(0) => bail!("--exact-n must be positive"),
        Some(n) => Some((
            n,
            count_paths_with(
                s,
                n,
                CountOptions {
                    mem_cap: args.common.mem_cap,
                    ..CountOptions::default()
                },
            )?,
        )),
        None => None,
    };
    let points = grid(&source, args.grid_points)?;
    let log_v = log_total_weight(s);

    let mut columns: Vec<String> = (1..=s.dim()).map(|k| format!("x_{k}")).collect();
    columns.extend(["rate", "delta", "det_A"].map(String::from));
    if exact.is_some() {
        columns.push("empirical".into());
    }
    columns.push("notes".into());

    let rows: Vec<Vec<Field>> = points
        .par_iter()
        .map(|p| {
            let x: Vec<f64> = p.iter().map(latpath::numeric::rational_to_f64).collect();
            let mut row: Vec<Field> = x.iter().map(|v| Field::Float(*v)).collect();
            let mut notes = Vec::new();
            match invert_moment_map(s, &x, opts) {
                Ok(dp) => row.extend([
                    Field::Float(dp.rate),
                    Field::Float(dp.delta),
                    Field::Float(dp.hessian_det),
                ]),
                Err(e) => {
                    row.extend([Field::Empty, Field::Empty, Field::Empty]);
                    notes.push(e.to_string());
                }
            }
            if let Some((n, table)) = &exact {
                let gamma: Vec<i64> = x.iter().map(|v| (v * *n as f64).round() as i64).collect();
                let l = table.log_value(&gamma);
                if s.support_test(*n, &gamma) && l.is_finite() {
                    row.push(Field::Float(-(l - *n as f64 * log_v) / *n as f64));
                } else {
                    row.push(Field::Empty);
                    notes.push(format!("no paths to {gamma:?}"));
                }
            }
            row.push(Field::Text(notes.join("; ")));
            row
        })
        .collect();

    let mut meta = vec![("tool".to_string(), format!("latpath {}", env!("CARGO_PKG_VERSION")))];
    meta.extend(source.describe());
    meta.push(("grid_points".into(), args.grid_points.to_string()));
    meta.push(("solver_tol".into(), format!("{:e}", args.common.tol)));
    if let Some((n, _)) = &exact {
        meta.push(("empirical".into(), format!("-(1/N) log(m_N(round(N x)) / V^N), N={n}")));
    }
    Ok(Table {
        schema: "rate-profile-v1",
        meta,
        columns,
        rows,
    })
}
