//! Run configuration: JSON-compatible structured text with "re,im" complex
//! pairs and "p/q" rational strings, plus the bundled example models.
//!
//! Every cross-reference (charge lengths, period rank, theta length) is
//! validated up front; errors carry a JSON-pointer-style path to the
//! offending key.

use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::central_charge::{ModuliPath, PathKind, PeriodModel};
use crate::error::Error;
use crate::linalg::Rat;
use crate::orbifold::OrbifoldSpec;
use crate::rep::SubrepOptions;
use crate::stability::{ChargeMap, ThetaVector};
use crate::walls::{GridRect, SpectrumOptions};
use crate::Result;

/// Parse a "re,im" pair (a bare "re" is accepted as a real number).
pub fn parse_complex(s: &str, pointer: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |x: &str| -> Result<f64> {
        x.trim()
            .parse()
            .map_err(|_| Error::config(pointer, format!("bad number {x:?} in complex pair {s:?}")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(Error::config(
            pointer,
            format!("expected \"re,im\", got {s:?}"),
        )),
    }
}

pub fn format_complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

pub fn parse_rational(s: &str, pointer: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::config(pointer, format!("bad rational {s:?}: {e}")))
}

/// Comma-separated integer list, e.g. a charge "1,-2,0".
pub fn parse_i64_list(s: &str, pointer: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::config(pointer, format!("bad integer {x:?} in list {s:?}")))
        })
        .collect()
}

/// Period model as configured: polynomial coefficient arrays or tabulated
/// samples, with an optional declared rank to validate against.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PeriodModelConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<(f64, Vec<String>)>>,
}

impl PeriodModelConfig {
    pub fn to_model(&self, pointer: &str) -> Result<PeriodModel> {
        let model = match (&self.components, &self.samples) {
            (Some(components), None) => {
                let comps = components
                    .iter()
                    .enumerate()
                    .map(|(i, coeffs)| {
                        coeffs
                            .iter()
                            .map(|c| parse_complex(c, &format!("{pointer}/components/{i}")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                PeriodModel::Polynomial { components: comps }
            }
            (None, Some(samples)) => {
                let rows = samples
                    .iter()
                    .enumerate()
                    .map(|(i, (s, vals))| {
                        let v = vals
                            .iter()
                            .map(|c| parse_complex(c, &format!("{pointer}/samples/{i}")))
                            .collect::<Result<Vec<_>>>()?;
                        Ok((*s, v))
                    })
                    .collect::<Result<Vec<_>>>()?;
                PeriodModel::Tabulated { samples: rows }
            }
            _ => {
                return Err(Error::config(
                    pointer,
                    "exactly one of `components` or `samples` must be given",
                ))
            }
        };
        if let Some(rank) = self.rank {
            if rank != model.rank() {
                return Err(Error::config(
                    pointer,
                    format!("declared rank {rank} but model has rank {}", model.rank()),
                ));
            }
        }
        Ok(model)
    }
}

/// Path as configured; complex endpoints are "re,im" strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PathConfig {
    Segment {
        from: String,
        to: String,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    Arc {
        center: String,
        radius: f64,
        angle_start: f64,
        angle_end: f64,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    Polyline {
        points: Vec<String>,
        #[serde(default = "default_samples")]
        samples: usize,
    },
}

fn default_samples() -> usize {
    64
}

impl PathConfig {
    pub fn to_path(&self, pointer: &str) -> Result<ModuliPath> {
        Ok(match self {
            PathConfig::Segment { from, to, samples } => ModuliPath::new(
                PathKind::Segment {
                    from: parse_complex(from, &format!("{pointer}/from"))?,
                    to: parse_complex(to, &format!("{pointer}/to"))?,
                },
                *samples,
            ),
            PathConfig::Arc {
                center,
                radius,
                angle_start,
                angle_end,
                samples,
            } => ModuliPath::new(
                PathKind::Arc {
                    center: parse_complex(center, &format!("{pointer}/center"))?,
                    radius: *radius,
                    angle_start: *angle_start,
                    angle_end: *angle_end,
                },
                *samples,
            ),
            PathConfig::Polyline { points, samples } => {
                if points.len() < 2 {
                    return Err(Error::config(pointer, "polyline needs >= 2 points"));
                }
                let pts = points
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_complex(s, &format!("{pointer}/points/{i}")))
                    .collect::<Result<Vec<_>>>()?;
                ModuliPath::new(PathKind::Polyline { points: pts }, *samples)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridConfig {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    #[serde(default = "default_grid_n")]
    pub nx: usize,
    #[serde(default = "default_grid_n")]
    pub ny: usize,
}

fn default_grid_n() -> usize {
    64
}

impl GridConfig {
    pub fn rect(&self) -> GridRect {
        GridRect {
            re_min: self.re_min,
            re_max: self.re_max,
            im_min: self.im_min,
            im_max: self.im_max,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub massless: f64,
    pub phase: f64,
    pub wall_bracket: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            massless: crate::central_charge::MASSLESS_TOL,
            phase: crate::stability::PHASE_TOL,
            wall_bracket: crate::walls::WALL_S_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    pub subrep_total_dim: usize,
    pub candidates_per_node: usize,
    pub spectrum_per_node: usize,
    pub generic_retries: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subrep_total_dim: 12,
            candidates_per_node: 64,
            spectrum_per_node: 3,
            generic_retries: 8,
        }
    }
}

/// Full run configuration. Orbifold data uses the flat keys `order`,
/// `weights`, `lsm_weights`, `mu`; everything else is optional and validated
/// when a command needs it.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<[i64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lsm_weights: Option<[i64; 6]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period_model: Option<PeriodModelConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charge_map: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    /// Moduli point "re,im" used by point-wise commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    /// Theta vector as "p/q" strings, one per node.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<String>>,
    /// Default parent charge for wall scans.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charge: Option<Vec<i64>>,
    /// Default witness subcharges for wall scans.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcharges: Option<Vec<Vec<i64>>>,
    pub tolerances: Tolerances,
    pub caps: Caps,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)
            .map_err(|e| Error::config("/", format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Cross-field consistency; individual commands still check that the
    /// fields they need are present.
    pub fn validate(&self) -> Result<()> {
        if let (Some(order), Some(weights)) = (self.order, self.weights) {
            OrbifoldSpec::new(order, weights)
                .map_err(|e| Error::config("/weights", e.to_string()))?;
        }
        if self.order.is_some() != self.weights.is_some() {
            return Err(Error::config(
                "/order",
                "`order` and `weights` must be given together",
            ));
        }
        if let Some(lsm) = self.lsm_weights {
            crate::orbifold::LinearSigmaSpec::new(lsm, self.mu.unwrap_or(0.0))
                .map_err(|e| Error::config("/lsm_weights", e.to_string()))?;
        }
        let period_rank = match &self.period_model {
            Some(pm) => Some(pm.to_model("/period_model")?.rank()),
            None => None,
        };
        if let Some(map) = &self.charge_map {
            let cols = map.first().map_or(0, Vec::len);
            if map.iter().any(|r| r.len() != cols) {
                return Err(Error::config("/charge_map", "ragged charge map rows"));
            }
            if let Some(order) = self.order {
                if map.len() != order as usize {
                    return Err(Error::config(
                        "/charge_map",
                        format!("{} rows for a {}-node quiver", map.len(), order),
                    ));
                }
            }
            if let Some(rank) = period_rank {
                if cols != rank {
                    return Err(Error::config(
                        "/charge_map",
                        format!("{cols} columns but period model has rank {rank}"),
                    ));
                }
            }
        }
        if let (Some(theta), Some(order)) = (&self.theta, self.order) {
            if theta.len() != order as usize {
                return Err(Error::config(
                    "/theta",
                    format!("{} entries for a {}-node quiver", theta.len(), order),
                ));
            }
            for (i, s) in theta.iter().enumerate() {
                parse_rational(s, &format!("/theta/{i}"))?;
            }
        }
        if let Some(charge) = &self.charge {
            if let Some(rank) = period_rank {
                if charge.len() != rank {
                    return Err(Error::config(
                        "/charge",
                        format!("charge has {} entries, period rank {rank}", charge.len()),
                    ));
                }
            }
        }
        if let Some(at) = &self.at {
            parse_complex(at, "/at")?;
        }
        Ok(())
    }

    pub fn orbifold_spec(&self) -> Result<OrbifoldSpec> {
        match (self.order, self.weights) {
            (Some(order), Some(weights)) => OrbifoldSpec::new(order, weights),
            _ => Err(Error::config(
                "/order",
                "this command needs `order` and `weights` (or a preset)",
            )),
        }
    }

    pub fn period_model(&self) -> Result<PeriodModel> {
        self.period_model
            .as_ref()
            .ok_or_else(|| Error::config("/period_model", "this command needs `period_model`"))?
            .to_model("/period_model")
    }

    pub fn moduli_path(&self) -> Result<ModuliPath> {
        self.path
            .as_ref()
            .ok_or_else(|| Error::config("/path", "this command needs `path`"))?
            .to_path("/path")
    }

    pub fn moduli_point(&self) -> Result<Complex64> {
        match &self.at {
            Some(at) => parse_complex(at, "/at"),
            None => Err(Error::config("/at", "this command needs `at` (\"re,im\")")),
        }
    }

    pub fn charge_map_or_identity(&self, nodes: usize) -> Result<ChargeMap> {
        match &self.charge_map {
            Some(rows) => {
                if rows.len() != nodes {
                    return Err(Error::config(
                        "/charge_map",
                        format!("{} rows for a {nodes}-node quiver", rows.len()),
                    ));
                }
                Ok(ChargeMap(rows.clone()))
            }
            None => Ok(ChargeMap::identity(nodes)),
        }
    }

    pub fn theta_vector(&self) -> Result<Option<ThetaVector>> {
        match &self.theta {
            Some(strings) => {
                let theta = strings
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_rational(s, &format!("/theta/{i}")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Some(theta))
            }
            None => Ok(None),
        }
    }

    pub fn subrep_options(&self) -> SubrepOptions {
        SubrepOptions {
            total_dim_bound: self.caps.subrep_total_dim,
            candidates_per_node: self.caps.candidates_per_node,
            seed: self.seed,
            max_tracked: SubrepOptions::default().max_tracked,
        }
    }

    pub fn spectrum_options(&self) -> SpectrumOptions {
        SpectrumOptions {
            seed: self.seed,
            generic_retries: self.caps.generic_retries,
            subrep: self.subrep_options(),
            massless_tol: self.tolerances.massless,
            phase_tol: self.tolerances.phase,
        }
    }

    /// Named bundled models.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "trivial" => Ok(preset_trivial()),
            "z3" => Ok(preset_z3()),
            "two-charge" | "two_charge" => Ok(preset_two_charge()),
            other => Err(Error::config(
                "/preset",
                format!("unknown preset {other:?} (available: trivial, z3, two-charge)"),
            )),
        }
    }
}

/// Flat C^3 (trivial group): one node, three loops, rank-1 constant period.
pub fn preset_trivial() -> RunConfig {
    RunConfig {
        order: Some(1),
        weights: Some([0, 0, 0]),
        lsm_weights: Some([1, 1, 1, 1, 1, -5]),
        mu: Some(1.0),
        period_model: Some(PeriodModelConfig {
            rank: Some(1),
            components: Some(vec![vec!["1,0".into()]]),
            samples: None,
        }),
        charge_map: Some(vec![vec![1]]),
        at: Some("0,1".into()),
        caps: Caps {
            spectrum_per_node: 2,
            ..Caps::default()
        },
        ..RunConfig::default()
    }
}

/// C^3/Z_3 with the polynomial large-volume-style periods (1, t, t^2/2) and
/// an identity charge map placeholder; the true McKay-to-large-volume basis
/// matrix is user-supplied config.
pub fn preset_z3() -> RunConfig {
    RunConfig {
        order: Some(3),
        weights: Some([1, 1, 1]),
        period_model: Some(PeriodModelConfig {
            rank: Some(3),
            components: Some(vec![
                vec!["1,0".into()],
                vec!["0,0".into(), "1,0".into()],
                vec!["0,0".into(), "0,0".into(), "0.5,0".into()],
            ]),
            samples: None,
        }),
        charge_map: Some(vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ]),
        path: Some(PathConfig::Arc {
            center: "0,0".into(),
            radius: 1.0,
            angle_start: std::f64::consts::FRAC_PI_2,
            angle_end: 0.0,
            samples: 64,
        }),
        at: Some("0,1".into()),
        theta: Some(vec!["1".into(), "-1".into(), "0".into()]),
        charge: Some(vec![1, 1, 0]),
        subcharges: Some(vec![vec![0, 1, 0], vec![1, 0, 0]]),
        caps: Caps {
            spectrum_per_node: 1,
            ..Caps::default()
        },
        ..RunConfig::default()
    }
}

/// Two-charge toy model Pi = (1, t) with no orbifold attached; the standard
/// wall example between (1,1) and (1,0) lives here.
pub fn preset_two_charge() -> RunConfig {
    RunConfig {
        period_model: Some(PeriodModelConfig {
            rank: Some(2),
            components: Some(vec![
                vec!["1,0".into()],
                vec!["0,0".into(), "1,0".into()],
            ]),
            samples: None,
        }),
        path: Some(PathConfig::Arc {
            center: "0,0".into(),
            radius: 1.0,
            angle_start: std::f64::consts::FRAC_PI_2,
            angle_end: 0.0,
            samples: 64,
        }),
        at: Some("0,1".into()),
        charge: Some(vec![1, 1]),
        subcharges: Some(vec![vec![1, 0], vec![0, 1]]),
        ..RunConfig::default()
    }
}
