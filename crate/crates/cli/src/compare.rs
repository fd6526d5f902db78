use std::collections::{BTreeMap, BTreeSet};

use anyhow::{bail, Result};
use latpath::asymptotics::{AsymptoticEstimate, Estimator, RegimeThresholds};
use latpath::dual::rate_function_with;
use latpath::exact::{CoefficientTable, CountOptions, TensorPowerTable};
use latpath::numeric::ln_biguint;
use latpath::{count_paths_with, Error, SolverOptions};
use rayon::prelude::*;

use crate::args::{parse_estimators, parse_n_list, parse_points, parse_ray, CompareArgs, EstimatorName};
use crate::output::{Field, Table};
use crate::source::Source;

const ASYMPTOTIC: [EstimatorName; 5] = [
    EstimatorName::Cl,
    EstimatorName::Md,
    EstimatorName::Sd,
    EstimatorName::IrredSd,
    EstimatorName::IrredCl,
];

enum Targets {
    Ray { alpha: Vec<i64>, f: Vec<i64> },
    Points(Vec<Vec<i64>>),
    Grid(f64),
}

/// The fully validated sweep.
struct Sweep {
    source: Source,
    ns: Vec<u64>,
    targets: Targets,
    estimators: Vec<EstimatorName>,
    estimator: Estimator,
    count: CountOptions,
}

struct Cell {
    n: u64,
    target: Vec<i64>,
    on_ray: bool,
}

enum Exact {
    Paths(Box<CoefficientTable>),
    Tensor(Box<TensorPowerTable>),
}

impl Exact {
    fn table(&self) -> &CoefficientTable {
        match self {
            Exact::Paths(t) => t,
            Exact::Tensor(t) => t.table(),
        }
    }
}

impl Sweep {
    fn new(args: &CompareArgs) -> Result<Self> {
        let source = Source::load(&args.source)?;
        let ns = parse_n_list(&args.n)?;
        let estimators = parse_estimators(&args.estimators)?;
        let irred = estimators
            .iter()
            .any(|e| matches!(e, EstimatorName::IrredSd | EstimatorName::IrredCl));
        if irred && source.diagram().is_none() {
            bail!("irredSD and irredCL need --group and --lambda");
        }
        let dim = source.target_dim();
        let targets = if let Some(r) = &args.ray {
            let (alpha, f) = parse_ray(r, dim)?;
            Targets::Ray { alpha, f }
        } else if let Some(p) = &args.points {
            let pts = parse_points(p)?;
            if let Some(bad) = pts.iter().find(|p| p.len() != dim) {
                bail!("target {bad:?} should have {dim} coordinates");
            }
            Targets::Points(pts)
        } else {
            let r = args.grid_radius.unwrap_or(3.0);
            if !(r.is_finite() && r >= 0.0) {
                bail!("--grid-radius must be a nonnegative number");
            }
            Targets::Grid(r)
        };
        if args.common.tol.is_nan() || args.common.tol <= 0.0 {
            bail!("--tol must be positive");
        }
        let estimator = Estimator {
            solver: SolverOptions {
                tol: args.common.tol,
                ..SolverOptions::default()
            },
            thresholds: RegimeThresholds {
                cl_cut: args.cl_cut,
                md_cut: args.md_cut,
                md_smax: args.md_smax,
            },
        };
        let count = CountOptions {
            mem_cap: args.common.mem_cap,
            ..CountOptions::default()
        };
        Ok(Sweep {
            source,
            ns,
            targets,
            estimators,
            estimator,
            count,
        })
    }

    fn has(&self, e: EstimatorName) -> bool {
        self.estimators.contains(&e)
    }

    fn wants_irred_exact(&self) -> bool {
        self.has(EstimatorName::Exact) && (self.has(EstimatorName::IrredSd) || self.has(EstimatorName::IrredCl))
    }

    fn cells(&self, n: u64) -> Vec<Cell> {
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut on_ray = false;
        match &self.targets {
            Targets::Ray { alpha, f } => {
                set.insert(alpha.iter().zip(f).map(|(a, b)| n as i64 * a + b).collect());
                on_ray = true;
            }
            Targets::Points(p) => set.extend(p.iter().cloned()),
            Targets::Grid(r) => {
                let s = self.source.step_set();
                let center: Vec<f64> = latpath::center_of_mass(s).iter().map(|c| c * n as f64).collect();
                let radius = r * (n as f64).sqrt();
                let mut point = vec![0i64; s.dim()];
                grid_points(&center, radius, 0, &mut point, &mut |g| {
                    if s.support_test(n, g) {
                        set.insert(self.source.target_of(g, n));
                    }
                });
            }
        }
        set.into_iter().map(|target| Cell { n, target, on_ray }).collect()
    }

    fn exact(&self, n: u64) -> Result<Option<Exact>> {
        if !self.has(EstimatorName::Exact) {
            return Ok(None);
        }
        Ok(Some(match self.source.diagram() {
            None => Exact::Paths(Box::new(count_paths_with(self.source.step_set(), n, self.count)?)),
            Some(d) => Exact::Tensor(Box::new(TensorPowerTable::with_options(d, n, self.count)?)),
        }))
    }

    fn columns(&self) -> Vec<String> {
        let mut cols = vec!["N".to_string()];
        let prefix = self.source.target_prefix();
        cols.extend((1..=self.source.target_dim()).map(|k| format!("{prefix}_{k}")));
        cols.push("regime".into());
        if self.has(EstimatorName::Exact) {
            cols.push("log_exact".into());
            if self.wants_irred_exact() {
                cols.push("log_exact_irred".into());
            }
        }
        for e in ASYMPTOTIC.iter().filter(|e| self.has(**e)) {
            cols.push(format!("log_estimate_{}", e.label()));
        }
        if self.has(EstimatorName::Exact) {
            for e in ASYMPTOTIC.iter().filter(|e| self.has(**e)) {
                cols.push(format!("ratio_{}", e.label()));
            }
        }
        if self.has(EstimatorName::Rate) {
            cols.push("rate".into());
        }
        cols.push("support_flag".into());
        cols.push("notes".into());
        cols
    }

    fn estimate(&self, e: EstimatorName, cell: &Cell, gamma: &[i64]) -> latpath::Result<AsymptoticEstimate> {
        let s = self.source.step_set();
        let est = &self.estimator;
        let n = cell.n;
        match e {
            EstimatorName::Cl => est.central_limit(s, gamma, n),
            EstimatorName::Md => est.moderate_deviation(s, gamma, n),
            EstimatorName::Sd => match (&self.targets, cell.on_ray) {
                (Targets::Ray { alpha, f }, true) => {
                    let (a, f) = match self.source.diagram() {
                        None => (alpha.clone(), f.clone()),
                        Some(d) => (
                            d.shifted(alpha, 1).ok_or_else(|| Error::NotInStepSet(alpha.clone()))?,
                            d.root
                                .to_lstar(f)
                                .ok_or_else(|| Error::FNotInDifferenceLattice(f.clone()))?,
                        ),
                    };
                    est.strong_deviation(s, &a, &f, n)
                }
                _ => est.strong_deviation_auto(s, gamma, n),
            },
            EstimatorName::IrredSd => {
                let d = self.source.diagram().expect("checked at startup");
                if cell.target.iter().any(|v| v % n as i64 != 0) {
                    return Err(Error::Invalid("target is not N times a weight".into()));
                }
                let nu: Vec<i64> = cell.target.iter().map(|v| v / n as i64).collect();
                est.irreducible_sd(d, &nu, n)
            }
            EstimatorName::IrredCl => {
                est.irreducible_cl(self.source.diagram().expect("checked at startup"), &cell.target, n)
            }
            _ => unreachable!(),
        }
    }

    fn row(&self, cell: &Cell, exact: Option<&Exact>) -> Vec<Field> {
        let cols = self.columns();
        let mut vals: BTreeMap<String, Field> = BTreeMap::new();
        let mut notes: Vec<String> = Vec::new();
        vals.insert("N".into(), Field::Int(cell.n as i64));
        let prefix = self.source.target_prefix();
        for (k, v) in cell.target.iter().enumerate() {
            vals.insert(format!("{prefix}_{}", k + 1), Field::Int(*v));
        }
        let s = self.source.step_set();
        let gamma = self.source.to_lattice(&cell.target, cell.n);
        let support = gamma.as_ref().is_some_and(|g| s.support_test(cell.n, g));
        vals.insert("support_flag".into(), Field::Bool(support));
        let gamma = match (gamma, support) {
            (Some(g), true) => g,
            _ => {
                notes.push("outside support".into());
                vals.insert("notes".into(), Field::Text(notes.join("; ")));
                return cols.iter().map(|c| vals.remove(c).unwrap_or(Field::Empty)).collect();
            }
        };

        match self.estimator.classify(s, &gamma, cell.n) {
            Ok(dec) => {
                vals.insert("regime".into(), Field::Text(dec.regime.to_string()));
            }
            Err(e) => notes.push(format!("regime: {e}")),
        }

        let mut log_exact = None;
        let mut log_exact_irred = None;
        if let Some(ex) = exact {
            let l = ex.table().log_value(&gamma);
            if l.is_finite() {
                log_exact = Some(l);
            } else {
                notes.push("exact: zero".into());
            }
            vals.insert("log_exact".into(), Field::float(l));
            if let (true, Exact::Tensor(t)) = (self.wants_irred_exact(), ex) {
                match t.irreducible_multiplicity(&cell.target) {
                    Ok(m) => {
                        let l = ln_biguint(&m);
                        if l.is_finite() {
                            log_exact_irred = Some(l);
                        } else {
                            notes.push("exact_irred: zero".into());
                        }
                        vals.insert("log_exact_irred".into(), Field::float(l));
                    }
                    Err(e) => notes.push(format!("exact_irred: {e}")),
                }
            }
        }

        for e in ASYMPTOTIC.into_iter().filter(|e| self.has(*e)) {
            match self.estimate(e, cell, &gamma) {
                Ok(est) => {
                    if est.degenerate_leading_term {
                        notes.push(format!("{}: leading term vanishes", e.label()));
                    }
                    if !est.log_value.is_finite() {
                        continue;
                    }
                    vals.insert(format!("log_estimate_{}", e.label()), Field::Float(est.log_value));
                    let reference = match e {
                        EstimatorName::IrredSd | EstimatorName::IrredCl => log_exact_irred,
                        _ => log_exact,
                    };
                    if let Some(l) = reference {
                        vals.insert(format!("ratio_{}", e.label()), Field::float((est.log_value - l).exp()));
                    }
                }
                Err(err) => notes.push(format!("{}: {err}", e.label())),
            }
        }

        if self.has(EstimatorName::Rate) {
            let x: Vec<f64> = gamma.iter().map(|&g| g as f64 / cell.n as f64).collect();
            match rate_function_with(s, &x, self.estimator.solver) {
                Ok(r) => {
                    vals.insert("rate".into(), Field::Float(r));
                }
                Err(e) => notes.push(format!("rate: {e}")),
            }
        }
        vals.insert("notes".into(), Field::Text(notes.join("; ")));
        cols.iter().map(|c| vals.remove(c).unwrap_or(Field::Empty)).collect()
    }

    fn metadata(&self) -> Vec<(String, String)> {
        let mut meta = vec![("tool".to_string(), format!("latpath {}", env!("CARGO_PKG_VERSION")))];
        meta.extend(self.source.describe());
        let ns: Vec<String> = self.ns.iter().map(u64::to_string).collect();
        meta.push(("N".into(), ns.join(",")));
        meta.push((
            "targets".into(),
            match &self.targets {
                Targets::Ray { alpha, f } => format!("ray A={alpha:?} F={f:?}"),
                Targets::Points(p) => format!("points {p:?}"),
                Targets::Grid(r) => format!("grid radius {r}*sqrt(N)"),
            },
        ));
        let names: Vec<&str> = self.estimators.iter().map(|e| e.label()).collect();
        meta.push(("estimators".into(), names.join(",")));
        let t = self.estimator.thresholds;
        meta.push((
            "thresholds".into(),
            format!("cl_cut={} md_cut={} md_smax={}", t.cl_cut, t.md_cut, t.md_smax),
        ));
        meta.push(("solver_tol".into(), format!("{:e}", self.estimator.solver.tol)));
        meta.push(("mem_cap".into(), self.count.mem_cap.to_string()));
        meta.push(("ratio".into(), "exp(log_estimate - log_exact)".into()));
        if self.wants_irred_exact() {
            meta.push((
                "irreducible".into(),
                "irredSD/irredCL ratios use log_exact_irred".into(),
            ));
        }
        meta
    }
}

/// Visits every integer point within `radius` of `center`.
fn grid_points(center: &[f64], radius: f64, k: usize, point: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
    if k == center.len() {
        let d2: f64 = point.iter().zip(center).map(|(p, c)| (*p as f64 - c).powi(2)).sum();
        if d2 <= radius * radius * (1.0 + 1e-12) {
            visit(point);
        }
        return;
    }
    let lo = (center[k] - radius).ceil() as i64;
    let hi = (center[k] + radius).floor() as i64;
    for v in lo..=hi {
        point[k] = v;
        grid_points(center, radius, k + 1, point, visit);
    }
}

pub fn run(args: &CompareArgs) -> Result<Table> {
    let sweep = Sweep::new(args)?;
    let mut rows = Vec::new();
    for &n in &sweep.ns {
        let exact = sweep.exact(n)?;
        let cells = sweep.cells(n);
        let mut chunk: Vec<Vec<Field>> = cells.par_iter().map(|c| sweep.row(c, exact.as_ref())).collect();
        rows.append(&mut chunk);
    }
    Ok(Table {
        schema: "compare-v1",
        meta: sweep.metadata(),
        columns: sweep.columns(),
        rows,
    })
}
