//! Finite slices of cochain complexes and their cohomology.

use std::collections::BTreeMap;

use serde::Serialize;

use super::linalg::{Matrix, Span, SparseVec};
use crate::error::{Error, Result};

/// Inclusive degree range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeWindow {
    pub lo: i32,
    pub hi: i32,
}

impl DegreeWindow {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi, reason: "lo must not exceed hi".into() });
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }

    pub fn contains(&self, n: i32) -> bool {
        self.lo <= n && n <= self.hi
    }

    /// The window widened by one degree on each side.
    pub fn padded(&self) -> DegreeWindow {
        DegreeWindow { lo: self.lo - 1, hi: self.hi + 1 }
    }
}

/// Cochain slices `C^lo … C^hi` with maps `d^n : C^n → C^{n+1}` for `lo ≤ n < hi`.
#[derive(Debug, Clone)]
pub struct ComplexWindow {
    lo: i32,
    labels: Vec<Vec<String>>,
    diffs: Vec<Matrix>,
}

/// Cohomology in one degree.
#[derive(Debug, Clone)]
pub struct CohomologyDegree {
    pub degree: i32,
    pub dim: usize,
    /// Cocycles whose classes form a basis.
    pub representatives: Vec<SparseVec>,
    /// At a window boundary only `dim ker` (or `dim C`) is known; an upper bound.
    pub edge: bool,
}

impl ComplexWindow {
    pub fn new(lo: i32, labels: Vec<Vec<String>>, diffs: Vec<Matrix>) -> Result<Self> {
        if labels.is_empty() || diffs.len() + 1 != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} slices need {} differentials, got {}",
                labels.len(),
                labels.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ncols() != labels[k].len() || d.nrows() != labels[k + 1].len() {
                return Err(Error::DimensionMismatch(format!(
                    "d^{} is {}x{}, slices are {} and {}",
                    lo + k as i32,
                    d.nrows(),
                    d.ncols(),
                    labels[k].len(),
                    labels[k + 1].len()
                )));
            }
        }
        Ok(ComplexWindow { lo, labels, diffs })
    }

    pub fn window(&self) -> DegreeWindow {
        DegreeWindow { lo: self.lo, hi: self.lo + self.labels.len() as i32 - 1 }
    }

    pub fn dim(&self, n: i32) -> usize {
        self.slice(n).map(|l| l.len()).unwrap_or(0)
    }

    pub fn labels(&self, n: i32) -> &[String] {
        self.slice(n).unwrap_or(&[])
    }

    fn slice(&self, n: i32) -> Option<&[String]> {
        let k = n - self.lo;
        (k >= 0).then(|| self.labels.get(k as usize).map(|v| v.as_slice())).flatten()
    }

    pub fn differential(&self, n: i32) -> Option<&Matrix> {
        let k = n - self.lo;
        if k < 0 {
            return None;
        }
        self.diffs.get(k as usize)
    }

    pub fn is_interior(&self, n: i32) -> bool {
        let w = self.window();
        w.lo < n && n < w.hi
    }

    /// Checks `d^{n+1} ∘ d^n = 0` for every consecutive pair.
    pub fn check_square_zero(&self) -> Result<()> {
        for (k, pair) in self.diffs.windows(2).enumerate() {
            if !pair[1].compose(&pair[0]).is_zero() {
                return Err(Error::NonzeroSquare { degree: self.lo + k as i32 });
            }
        }
        Ok(())
    }

    pub fn cohomology(&self) -> Result<BTreeMap<i32, CohomologyDegree>> {
        self.check_square_zero()?;
        let mut out = BTreeMap::new();
        for n in self.window().degrees() {
            let dim_c = self.dim(n);
            let outgoing = self.differential(n);
            let incoming = self.differential(n - 1);
            let cocycles: Vec<SparseVec> = match outgoing {
                Some(d) => d.kernel(),
                None => (0..dim_c).map(super::linalg::unit_vec).collect(),
            };
            let mut span = incoming.map(|d| d.column_span()).unwrap_or_default();
            let boundary_rank = span.rank();
            let mut reps = Vec::new();
            for z in cocycles {
                if span.insert(&z) {
                    reps.push(z);
                }
            }
            debug_assert_eq!(span.rank(), boundary_rank + reps.len());
            out.insert(
                n,
                CohomologyDegree { degree: n, dim: reps.len(), representatives: reps, edge: !self.is_interior(n) },
            );
        }
        Ok(out)
    }
}

/// Dimension of `H = ker(out) / im(inc)` computed from ranks alone.
pub fn cohomology_dim(dim: usize, incoming: Option<&Matrix>, outgoing: Option<&Matrix>) -> usize {
    let r_out = outgoing.map(|m| m.rank()).unwrap_or(0);
    let r_in = incoming.map(|m| m.rank()).unwrap_or(0);
    dim - r_out - r_in
}

/// Reduces a cocycle modulo a span, e.g. to compare classes.
pub fn class_is_zero(boundaries: &Span, z: &SparseVec) -> bool {
    boundaries.contains(z)
}
