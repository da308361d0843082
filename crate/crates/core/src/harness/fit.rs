use std::fmt;
use std::str::FromStr;

/// Candidate growth models, from slowest to fastest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    Constant,
    Logarithmic,
    Sqrt,
    Linear,
    Linearithmic,
}

impl Model {
    pub const ALL: [Model; 5] = [
        Model::Constant,
        Model::Logarithmic,
        Model::Sqrt,
        Model::Linear,
        Model::Linearithmic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::Constant => "constant",
            Model::Logarithmic => "logarithmic",
            Model::Sqrt => "sqrt",
            Model::Linear => "linear",
            Model::Linearithmic => "linearithmic",
        }
    }

    pub fn shape(self, n: f64) -> f64 {
        match self {
            Model::Constant => 1.0,
            Model::Logarithmic => n.log2(),
            Model::Sqrt => n.sqrt(),
            Model::Linear => n,
            Model::Linearithmic => n * n.log2(),
        }
    }

    /// The next slower model, used as the lower-order correction term.
    pub fn lower(self) -> Option<Model> {
        match self {
            Model::Constant => None,
            Model::Logarithmic => Some(Model::Constant),
            Model::Sqrt => Some(Model::Logarithmic),
            Model::Linear => Some(Model::Sqrt),
            Model::Linearithmic => Some(Model::Linear),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown model {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelFit {
    pub model: Model,
    /// Coefficient of the leading term.
    pub lead: f64,
    /// Coefficient of the lower-order term (0 for the constant model).
    pub correction: f64,
    /// Root mean square of `(y - fit) / y`.
    pub residual: f64,
}

/// Fits `lead·f(n) + correction·g(n)` for every model by least squares on
/// relative errors, `g` being the next slower model.
pub fn fit_models(samples: &[(usize, u64)]) -> Vec<ModelFit> {
    Model::ALL.into_iter().map(|m| fit_one(m, samples)).collect()
}

fn fit_one(model: Model, samples: &[(usize, u64)]) -> ModelFit {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|&&(_, y)| y > 0)
        .map(|&(n, y)| (n as f64, y as f64))
        .collect();
    // weighting by 1/y^2 turns absolute residuals into relative ones
    let (lead, correction) = match model.lower() {
        None => {
            let (mut num, mut den) = (0.0, 0.0);
            for &(n, y) in &pts {
                let f = model.shape(n) / y;
                num += f;
                den += f * f;
            }
            (if den > 0.0 { num / den } else { 0.0 }, 0.0)
        }
        Some(low) => {
            let (mut sff, mut sfg, mut sgg, mut sf, mut sg) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for &(n, y) in &pts {
                let f = model.shape(n) / y;
                let g = low.shape(n) / y;
                sff += f * f;
                sfg += f * g;
                sgg += g * g;
                sf += f;
                sg += g;
            }
            let det = sff * sgg - sfg * sfg;
            if det.abs() < 1e-12 {
                (if sff > 0.0 { sf / sff } else { 0.0 }, 0.0)
            } else {
                ((sf * sgg - sg * sfg) / det, (sff * sg - sfg * sf) / det)
            }
        }
    };
    let residual = if pts.is_empty() {
        0.0
    } else {
        let sq: f64 = pts
            .iter()
            .map(|&(n, y)| {
                let fit = lead * model.shape(n) + model.lower().map_or(0.0, |l| correction * l.shape(n));
                ((y - fit) / y).powi(2)
            })
            .sum();
        (sq / pts.len() as f64).sqrt()
    };
    ModelFit {
        model,
        lead,
        correction,
        residual,
    }
}

/// Largest relative residual accepted for a fit.
pub const FIT_TOLERANCE: f64 = 0.10;
/// How much worse than the best residual a slower model may be and still win.
pub const PARSIMONY_MARGIN: f64 = 0.02;

/// Picks the slowest model whose residual is below [`FIT_TOLERANCE`] and
/// within [`PARSIMONY_MARGIN`] of the best one; falls back to the best fit.
pub fn select_model(fits: &[ModelFit]) -> ModelFit {
    let best = fits
        .iter()
        .copied()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .expect("at least one model");
    fits.iter()
        .copied()
        .filter(|f| f.lead > 0.0)
        .find(|f| f.residual < FIT_TOLERANCE && f.residual <= best.residual + PARSIMONY_MARGIN)
        .unwrap_or(best)
}
