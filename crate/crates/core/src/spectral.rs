//! Adjacency spectra of `D_q^m`.
//!
//! Two independent routes: a dense symmetric eigensolver on the 0/1 adjacency
//! matrix, and the Cayley-graph formula `λ_c = Σ_{s ∈ S} cos(2π Tr(⟨c, s⟩) / p)`
//! over all frequencies `c ∈ F_q^m`.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::graph::{unit_circle, Adjacency, Point, DEFAULT_MAX_VERTICES};

/// Largest vertex count accepted by [`dense_spectrum`].
pub const DENSE_MAX_VERTICES: usize = 4096;

/// Absolute tolerance per unit of degree used when comparing eigenvalues.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Cayley,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dense => "dense",
            Method::Cayley => "cayley",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Sorted descending, with multiplicity.
    eigenvalues: Vec<f64>,
    method: Method,
    /// Absolute tolerance on individual eigenvalues.
    tolerance: f64,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>, method: Method, tolerance: f64) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Spectrum {
            eigenvalues,
            method,
            tolerance,
        }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn lambda1(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `Σ λ^k`.
    pub fn moment(&self, k: i32) -> f64 {
        self.eigenvalues.iter().map(|l| l.powi(k)).sum()
    }

    /// Distinct eigenvalues (within tolerance) with multiplicities, descending.
    pub fn grouped(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &l in &self.eigenvalues {
            match out.last_mut() {
                Some((first, count, sum)) if (*first - l).abs() <= self.tolerance => {
                    *count += 1;
                    *sum += l;
                }
                _ => out.push((l, 1, l)),
            }
        }
        out.into_iter()
            .map(|(_, count, sum)| (sum / count as f64, count))
            .collect()
    }

    /// Largest deviation between the sorted eigenvalue lists.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    /// One `eigenvalue multiplicity` line per distinct eigenvalue, descending.
    pub fn write_text<W: Write>(&self, mut sink: W) -> Result<()> {
        for (value, mult) in self.grouped() {
            let value = if value.abs() < 5e-10 { 0.0 } else { value };
            writeln!(sink, "{value:.9} {mult}")?;
        }
        sink.flush()?;
        Ok(())
    }
}

/// Eigenvalues of the adjacency matrix via a dense symmetric eigensolver.
pub fn dense_spectrum(graph: &Adjacency, tol: f64) -> Result<Spectrum> {
    let n = graph.vertex_count();
    if n > DENSE_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "dense spectrum vertex count",
            size: n as u64,
            limit: DENSE_MAX_VERTICES as u64,
        });
    }
    let matrix = DMatrix::from_fn(n, n, |i, j| if graph.has_edge(i, j) { 1.0 } else { 0.0 });
    let eigen = matrix
        .try_symmetric_eigen(1e-13, 10_000)
        .ok_or(Error::NoConvergence)?;
    let scale = (0..n).map(|v| graph.degree(v)).max().unwrap_or(0).max(1) as f64;
    Ok(Spectrum::new(
        eigen.eigenvalues.iter().copied().collect(),
        Method::Dense,
        tol * scale,
    ))
}

/// Eigenvalues of `D_q^m` from additive characters, one per frequency.
pub fn cayley_spectrum(ctx: &FieldCtx, m: usize) -> Result<Spectrum> {
    let q = ctx.order() as usize;
    let size = (q as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    if size > DEFAULT_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count",
            size,
            limit: DEFAULT_MAX_VERTICES,
        });
    }
    let circle = unit_circle(ctx, m)?;
    let p = ctx.p() as usize;
    let trace: Vec<usize> = ctx.elements().map(|x| ctx.abs_trace(x) as usize).collect();
    let cosines: Vec<f64> = (0..p)
        .map(|k| (2.0 * PI * k as f64 / p as f64).cos())
        .collect();
    let mut hits = vec![0usize; p];
    let eigenvalues = (0..size as usize)
        .map(|index| {
            let c = Point::from_index(ctx, m, index);
            hits.iter_mut().for_each(|h| *h = 0);
            for s in &circle {
                let dot = c
                    .coords
                    .iter()
                    .zip(&s.coords)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| {
                        ctx.add(acc, ctx.mul(a, b))
                    });
                hits[trace[dot.code() as usize]] += 1;
            }
            hits.iter()
                .zip(&cosines)
                .map(|(&h, &cos)| h as f64 * cos)
                .sum()
        })
        .collect();
    let degree = circle.len().max(1) as f64;
    Ok(Spectrum::new(
        eigenvalues,
        Method::Cayley,
        DEFAULT_TOLERANCE * degree,
    ))
}

/// `1 - λ₁ / λ_min`.
pub fn hoffman_bound(spec: &Spectrum) -> Result<f64> {
    let lmin = spec.lambda_min();
    if lmin >= -spec.tolerance() {
        return Err(Error::DegenerateSpectrum(lmin));
    }
    Ok(1.0 - spec.lambda1() / lmin)
}

/// Integer lower bound `⌈1 - λ₁ / λ_min⌉`, allowing for rounding just above an
/// integer.
pub fn hoffman_lower(spec: &Spectrum) -> Result<usize> {
    let h = hoffman_bound(spec)?;
    Ok((h - 1e-9).ceil() as usize)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EigenDiagnostics {
    pub max_nonprincipal_abs: f64,
    pub sqrt_q: f64,
    pub within_sqrt_q: bool,
    pub within_two_sqrt_q: bool,
}

/// Magnitude of the non-principal eigenvalues against `√q` and `2√q`. One copy
/// of the largest eigenvalue (the degree) is excluded.
pub fn eigen_bound_report(spec: &Spectrum, q: u64) -> EigenDiagnostics {
    let max_nonprincipal_abs = spec
        .eigenvalues()
        .iter()
        .skip(1)
        .map(|l| l.abs())
        .fold(0.0, f64::max);
    let sqrt_q = (q as f64).sqrt();
    EigenDiagnostics {
        max_nonprincipal_abs,
        sqrt_q,
        within_sqrt_q: max_nonprincipal_abs <= sqrt_q + spec.tolerance(),
        within_two_sqrt_q: max_nonprincipal_abs <= 2.0 * sqrt_q + spec.tolerance(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumReport {
    pub q: u64,
    pub m: usize,
    pub method: Method,
    pub lambda1: f64,
    pub lambda_min: f64,
    pub max_nonprincipal_abs: f64,
    pub hoffman: Option<f64>,
}

impl SpectrumReport {
    pub fn new(spec: &Spectrum, q: u64, m: usize) -> Self {
        SpectrumReport {
            q,
            m,
            method: spec.method(),
            lambda1: spec.lambda1(),
            lambda_min: spec.lambda_min(),
            max_nonprincipal_abs: eigen_bound_report(spec, q).max_nonprincipal_abs,
            hoffman: hoffman_bound(spec).ok(),
        }
    }
}
