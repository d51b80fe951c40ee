//! Problem definitions assembled from a JSON file and command-line flags.

use std::fs;
use std::io::Read;

use reflectode::{parse_forcing, Coefficients, Error, ProblemSpec, Result, DEFAULT_TOL};
use serde::Deserialize;

use crate::args::{ProblemArgs, WindowArgs};

pub const DEFAULT_WINDOW: (f64, f64) = (-3.0, 3.0);

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    a: Option<f64>,
    b: Option<f64>,
    t0: Option<f64>,
    c: Option<f64>,
    h: Option<Forcing>,
    window: Option<(f64, f64)>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Forcing {
    Text(String),
    Number(f64),
}

/// Flags merged over the optional problem file.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub t0: f64,
    pub c: f64,
    pub h: String,
    pub window: Option<(f64, f64)>,
    pub tol: f64,
}

fn read_file(path: &std::path::Path) -> Result<ProblemFile> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("cannot read problem from stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("malformed problem file: {e}")))
}

impl Resolved {
    pub fn from_args(args: &ProblemArgs) -> Result<Self> {
        let file = match &args.file {
            Some(path) => read_file(path)?,
            None => ProblemFile::default(),
        };
        let h = match (&args.h, file.h) {
            (Some(h), _) => h.clone(),
            (None, Some(Forcing::Text(h))) => h,
            (None, Some(Forcing::Number(x))) => format!("{x:?}"),
            (None, None) => "0".to_string(),
        };
        let tol = args.tol.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Self {
            a: args.a.or(file.a),
            b: args.b.or(file.b),
            t0: args.t0.or(file.t0).unwrap_or(0.0),
            c: args.c.or(file.c).unwrap_or(0.0),
            h,
            window: file.window,
            tol,
        })
    }

    pub fn coeffs(&self) -> Result<Coefficients> {
        match (self.a, self.b) {
            (Some(a), Some(b)) => Coefficients::new(a, b),
            _ => Err(Error::InvalidInput("both --a and --b are required".into())),
        }
    }

    pub fn problem(&self) -> Result<ProblemSpec> {
        let h = parse_forcing(&self.h)?.to_forcing();
        ProblemSpec::new(self.coeffs()?, self.t0, self.c, h)
    }

    /// Evaluation points: explicit ones if given, else `n` points on the window.
    pub fn points(&self, grid: &WindowArgs, explicit: &[f64]) -> Result<Vec<f64>> {
        if !explicit.is_empty() {
            return Ok(explicit.to_vec());
        }
        let (lo, hi) = self.window(grid)?;
        if grid.n < 2 {
            return Err(Error::InvalidInput(format!("--n must be at least 2, got {}", grid.n)));
        }
        Ok(reflectode::kernel::lattice(lo, hi, grid.n))
    }

    pub fn window(&self, grid: &WindowArgs) -> Result<(f64, f64)> {
        let (lo, hi) = match &grid.window {
            Some(w) => pair("--window", w)?,
            None => self.window.unwrap_or(DEFAULT_WINDOW),
        };
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInput(format!("window [{lo}, {hi}] is not a finite interval")));
        }
        Ok((lo, hi))
    }
}

/// `LO,HI` from a comma-separated flag value.
pub fn pair(flag: &str, values: &[f64]) -> Result<(f64, f64)> {
    match values {
        [lo, hi] => Ok((*lo, *hi)),
        _ => Err(Error::InvalidInput(format!("{flag} takes exactly two values LO,HI, got {}", values.len()))),
    }
}
