//! Lattice configurations and the text key–value config format.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::NumericsError;

/// Space-time torus lattice with parabolic step coupling `h_t = h²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeConfig {
    /// Spatial torus period.
    pub extent_x: f64,
    /// Time torus period (rounded to a whole number of steps).
    pub extent_t: f64,
    /// Spatial step.
    pub h: f64,
    /// Spatial dimension, 1 or 3.
    pub d: usize,
    pub nx: usize,
    pub nt: usize,
}

impl LatticeConfig {
    pub fn new(extent_x: f64, extent_t: f64, h: f64, d: usize) -> Result<Self, NumericsError> {
        if d != 1 && d != 3 {
            return Err(NumericsError::DimensionUnsupported(d));
        }
        if h <= 0.0 || extent_x < h || extent_t <= 0.0 {
            return Err(NumericsError::Config("invalid lattice extents".into()));
        }
        let nx = (extent_x / h).round().max(1.0) as usize;
        let ht = h * h;
        let nt = (extent_t / ht).round().max(1.0) as usize;
        Ok(LatticeConfig {
            extent_x: nx as f64 * h,
            extent_t: nt as f64 * ht,
            h,
            d,
            nx,
            nt,
        })
    }

    /// 32 time steps over a 24³ spatial torus of period 2.
    pub fn default_3d() -> Self {
        let h = 2.0 / 24.0;
        LatticeConfig::new(2.0, 32.0 * h * h, h, 3).unwrap()
    }

    pub fn ht(&self) -> f64 {
        self.h * self.h
    }

    pub fn shape(&self) -> Vec<usize> {
        let mut s = vec![self.nt];
        s.extend(std::iter::repeat(self.nx).take(self.d));
        s
    }

    pub fn cells(&self) -> usize {
        self.shape().iter().product()
    }

    pub fn cell_volume(&self) -> f64 {
        self.ht() * self.h.powi(self.d as i32)
    }
}

/// Grid for the radial `(t, r)` constant-estimation engine. The time step
/// is independent of the radial one: the mollifier needs `ht ≲ ε²/2` while
/// the radial direction needs `hr ≲ ε/2`, and tying `ht = hr²` would waste
/// the whole budget on time resolution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialConfig {
    /// Radial step.
    pub hr: f64,
    /// Time step.
    pub ht: f64,
    /// Time torus period.
    pub extent_t: f64,
    /// Radial extent (sine-series boundary).
    pub extent_r: f64,
    /// Kernel truncation radius (parabolic).
    pub trunc_radius: f64,
    /// Refuse grids above this cell count.
    pub max_cells: usize,
}

impl Default for RadialConfig {
    fn default() -> Self {
        RadialConfig {
            hr: 1.0 / 256.0,
            ht: 1.0 / 16384.0,
            extent_t: 2.25,
            extent_r: 1.8,
            trunc_radius: 1.0,
            max_cells: 1 << 26,
        }
    }
}

impl RadialConfig {
    pub fn ht(&self) -> f64 {
        self.ht
    }

    pub fn nt(&self) -> usize {
        (self.extent_t / self.ht).round() as usize
    }

    /// Interior radial points (the sine boundary sits one step beyond).
    pub fn nr(&self) -> usize {
        (self.extent_r / self.hr).round() as usize - 1
    }

    /// The mollifier at scale ε must cover at least two cells per direction.
    pub fn validate(&self, eps: f64) -> Result<(), NumericsError> {
        let cells = self.nt() * self.nr();
        if cells > self.max_cells {
            return Err(NumericsError::GridLimit { cells, limit: self.max_cells });
        }
        if eps < 2.0 * self.hr || eps * eps < 2.0 * self.ht {
            return Err(NumericsError::EpsBelowResolution {
                eps,
                h: (2.0 * self.hr).max((2.0 * self.ht).sqrt()),
            });
        }
        Ok(())
    }
}

/// Parse the text config format: one `key = value` pair per line, `#`
/// comments. Returns the raw map; callers pick out their keys.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, NumericsError> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| NumericsError::Config(format!("line {}: expected key = value", lineno + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

pub fn config_f64(
    map: &BTreeMap<String, String>,
    key: &str,
    default: f64,
) -> Result<f64, NumericsError> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| NumericsError::Config(format!("{}: not a number: {}", key, v))),
    }
}

pub fn config_usize(
    map: &BTreeMap<String, String>,
    key: &str,
    default: usize,
) -> Result<usize, NumericsError> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| NumericsError::Config(format!("{}: not an integer: {}", key, v))),
    }
}
