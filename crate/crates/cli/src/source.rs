use std::fs;

use anyhow::{bail, Context, Result};
use latpath::numeric::rational_to_f64;
use latpath::{build_root_system, freudenthal_diagram, GroupName, WeightDiagram, WeightedStepSet};

use crate::args::{parse_ints, SourceArgs};

/// Either a bare step set or the shifted weight diagram of a representation.
pub enum Source {
    Steps { path: String, set: WeightedStepSet },
    Group(Box<WeightDiagram>),
}

impl Source {
    pub fn load(args: &SourceArgs) -> Result<Self> {
        match (&args.steps, &args.group, &args.lambda) {
            (Some(path), None, None) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let set = WeightedStepSet::from_json(&text).with_context(|| format!("loading {}", path.display()))?;
                Ok(Source::Steps {
                    path: path.display().to_string(),
                    set,
                })
            }
            (None, Some(g), Some(l)) => {
                let name: GroupName = g.parse()?;
                let lambda = parse_ints(l)?;
                let root = build_root_system(name);
                let d = freudenthal_diagram(&root, &lambda)?;
                Ok(Source::Group(Box::new(d)))
            }
            _ => bail!("give either --steps FILE or --group NAME --lambda WEIGHT"),
        }
    }

    pub fn step_set(&self) -> &WeightedStepSet {
        match self {
            Source::Steps { set, .. } => set,
            Source::Group(d) => &d.step_set,
        }
    }

    pub fn diagram(&self) -> Option<&WeightDiagram> {
        match self {
            Source::Group(d) => Some(d),
            Source::Steps { .. } => None,
        }
    }

    /// Length of the displayed target coordinates.
    pub fn target_dim(&self) -> usize {
        match self {
            Source::Steps { set, .. } => set.dim(),
            Source::Group(d) => d.lambda.len(),
        }
    }

    /// Column prefix of the displayed target coordinates.
    pub fn target_prefix(&self) -> &'static str {
        match self {
            Source::Steps { .. } => "gamma",
            Source::Group(_) => "nu",
        }
    }

    /// Lattice point of a displayed target, or `None` when it is not reachable at all.
    pub fn to_lattice(&self, target: &[i64], n: u64) -> Option<Vec<i64>> {
        match self {
            Source::Steps { .. } => Some(target.to_vec()),
            Source::Group(d) => d.shifted(target, n),
        }
    }

    pub fn target_of(&self, gamma: &[i64], n: u64) -> Vec<i64> {
        match self {
            Source::Steps { .. } => gamma.to_vec(),
            Source::Group(d) => d.unshifted(gamma, n),
        }
    }

    /// Metadata lines describing the source and its normalization.
    pub fn describe(&self) -> Vec<(String, String)> {
        let s = self.step_set();
        let com: Vec<String> = s.center_of_mass_exact().iter().map(|c| c.to_string()).collect();
        let mut out = Vec::new();
        match self {
            Source::Steps { path, .. } => {
                out.push(("source".into(), format!("steps {path}")));
                out.push(("coordinates".into(), "step-set lattice Z^m".into()));
            }
            Source::Group(d) => {
                out.push((
                    "source".into(),
                    format!("group {} lambda {:?} dim {}", d.root.name, d.lambda, d.dimension),
                ));
                out.push(("coordinates".into(), coordinate_note(d.root.name).into()));
                out.push(("pi_group_order".into(), d.root.pi_group_order().to_string()));
                let q: Vec<String> = d.q_star.iter().map(|c| format!("{}", rational_to_f64(c))).collect();
                out.push(("q_star".into(), format!("[{}]", q.join(","))));
            }
        }
        out.push(("step_dim".into(), s.dim().to_string()));
        out.push(("steps".into(), s.len().to_string()));
        out.push(("pi_order".into(), s.pi_order().to_string()));
        out.push(("total_weight".into(), s.total_weight().to_string()));
        out.push(("center_of_mass".into(), format!("[{}]", com.join(","))));
        out
    }
}

fn coordinate_note(g: GroupName) -> &'static str {
    match g {
        GroupName::A1 => "nu in fundamental-weight units; lattice in units of the fundamental weight",
        GroupName::A2 => "nu as Dynkin labels; lattice in Dynkin labels",
        GroupName::U2 => "nu as (l1,l2); lattice in multiples of alpha=(1,-1)",
    }
}
