//! Unit cells of periodic Jacobi operators and the energy/momentum newtypes
//! used throughout the crate.
//!
//! A cell stores one period of the coefficients of
//!
//! ```text
//! (J u)(n) = a(n-1) u(n-1) + b(n) u(n) + a(n) u(n+1)
//! ```
//!
//! with `a[i]` coupling site `i+1` to site `i+2` (1-based sites). The last
//! hopping `a[p-1]` crosses the cell boundary and plays the role of `a_0` in
//! the Weyl-function and impedance formulas.

use std::collections::hash_map::DefaultHasher;
use std::f64::consts::PI;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitCell {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    a: Vec<f64>,
    b: Vec<f64>,
}

/// On-disk layout of a cell document. Unknown keys are rejected.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDocument {
    a: Vec<f64>,
    b: Vec<f64>,
    #[serde(default)]
    name: Option<String>,
}

impl UnitCell {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Validation("a cell needs at least one site".into()));
        }
        if a.len() != b.len() {
            return Err(Error::Validation(format!(
                "length mismatch: {} hoppings vs {} on-site terms",
                a.len(),
                b.len()
            )));
        }
        if let Some(x) = a.iter().chain(b.iter()).find(|x| !x.is_finite()) {
            return Err(Error::Validation(format!("non-finite coefficient {x}")));
        }
        if let Some(&x) = a.iter().find(|&&x| x <= 0.0) {
            return Err(Error::NonPositiveHopping(x));
        }
        Ok(Self { name: None, a, b })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn period(&self) -> usize {
        self.a.len()
    }

    pub fn hoppings(&self) -> &[f64] {
        &self.a
    }

    pub fn onsite(&self) -> &[f64] {
        &self.b
    }

    /// Hopping across the cell boundary, `a_p`, identified with `a_0`.
    pub fn boundary_hopping(&self) -> f64 {
        self.a[self.a.len() - 1]
    }

    /// `a_{j-1}` for the 0-based site `j`, wrapping to `a_p` at `j = 0`.
    pub(crate) fn left_hopping(&self, j: usize) -> f64 {
        if j == 0 {
            self.boundary_hopping()
        } else {
            self.a[j - 1]
        }
    }

    /// Shift the cell origin by `shift` sites: the new cell starts at old
    /// site `shift + 1`.
    pub fn rotate(&self, shift: usize) -> UnitCell {
        let p = self.period();
        let s = shift % p;
        let a = (0..p).map(|i| self.a[(i + s) % p]).collect();
        let b = (0..p).map(|i| self.b[(i + s) % p]).collect();
        UnitCell {
            name: self.name.clone(),
            a,
            b,
        }
    }

    /// Hash of the coefficient bit patterns; the name is ignored.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.a.len().hash(&mut h);
        for x in self.a.iter().chain(self.b.iter()) {
            x.to_bits().hash(&mut h);
        }
        h.finish()
    }

    /// Loose scale of the coefficients, used for relative tolerances.
    pub(crate) fn scale(&self) -> f64 {
        let amax = self.a.iter().cloned().fold(0.0, f64::max);
        let bmax = self.b.iter().map(|x| x.abs()).fold(0.0, f64::max);
        amax + bmax
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cell serialisation is infallible")
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("cell serialisation is infallible")
    }
}

impl fmt::Display for UnitCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} a={:?} b={:?}", self.period(), self.a, self.b)
    }
}

pub fn make_ssh(t1: f64, t2: f64) -> Result<UnitCell> {
    Ok(UnitCell::new(vec![t1, t2], vec![0.0, 0.0])?.with_name("ssh"))
}

pub fn make_rice_mele(t1: f64, t2: f64, delta: f64) -> Result<UnitCell> {
    let cell = UnitCell::new(vec![t1, t2], vec![delta, -delta])?;
    Ok(cell.with_name("rice-mele"))
}

/// Mirror-symmetric three-site cell used as the standard quantisation example.
pub fn make_trimer() -> UnitCell {
    UnitCell::new(vec![1.2, 1.2, 1.5], vec![0.0, 1.0, 0.0])
        .expect("trimer coefficients are valid")
        .with_name("trimer")
}

pub fn make_monatomic(a: f64, b: f64) -> Result<UnitCell> {
    Ok(UnitCell::new(vec![a], vec![b])?.with_name("monatomic"))
}

/// Parse a JSON or TOML cell document. JSON is tried when the document
/// starts with `{`, TOML otherwise.
pub fn parse_cell(document: &str) -> Result<UnitCell> {
    let doc: CellDocument = if document.trim_start().starts_with('{') {
        serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        toml::from_str(document).map_err(|e| Error::Parse(e.to_string()))?
    };
    let cell = UnitCell::new(doc.a, doc.b).map_err(|e| match e {
        Error::NonPositiveHopping(x) => {
            Error::Validation(format!("hopping {x} is not strictly positive"))
        }
        other => other,
    })?;
    Ok(match doc.name {
        Some(n) => cell.with_name(n),
        None => cell,
    })
}

/// Energy in the closed upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexEnergy {
    pub re: f64,
    pub im: f64,
}

impl ComplexEnergy {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::Validation(format!("non-finite energy {re}{im:+}i")));
        }
        if im < 0.0 {
            return Err(Error::IllPlacedEnergy { re, im });
        }
        Ok(Self { re, im })
    }

    /// Boundary value `lambda + i0`.
    pub fn real(lambda: f64) -> Self {
        Self {
            re: lambda,
            im: 0.0,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Bloch momentum reduced to `[-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct BlochMomentum(f64);

impl BlochMomentum {
    pub fn new(k: f64) -> Self {
        if (-PI..=PI).contains(&k) {
            return Self(k);
        }
        let mut r = (k + PI).rem_euclid(2.0 * PI) - PI;
        if r <= -PI {
            r = PI;
        }
        Self(r)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}
