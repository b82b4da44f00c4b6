//! Finite-dimensional unitary representations: relation checks, commutants,
//! and the unitary irreducible representations of `ℤ₂ * ℤ₂`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

pub type CMatrix = DMatrix<Complex64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Frobenius-norm distance.
fn distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// One matrix per generator, all of the same dimension and unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    dimension: usize,
    matrices: Vec<CMatrix>,
    tolerance: f64,
}

impl MatrixRep {
    pub fn new(dimension: usize, matrices: Vec<CMatrix>, tolerance: f64) -> Result<Self> {
        if tolerance.is_nan() || tolerance < 0.0 {
            return Err(Error::BadParameters(format!(
                "tolerance {tolerance} must be non-negative"
            )));
        }
        for (g, m) in matrices.iter().enumerate() {
            if m.nrows() != dimension || m.ncols() != dimension {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {g} is {}x{}, expected {dimension}x{dimension}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        let rep = Self {
            dimension,
            matrices,
            tolerance,
        };
        if let Some(g) =
            (0..rep.matrices.len()).find(|&g| rep.unitarity_defect(g) > tolerance.max(1e-12))
        {
            return Err(Error::Validation(format!("matrix {g} is not unitary")));
        }
        Ok(rep)
    }

    /// Real matrices given row by row.
    pub fn from_real(rows: &[Vec<Vec<f64>>], tolerance: f64) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        let matrices = rows
            .iter()
            .map(|m| {
                if m.len() != d || m.iter().any(|r| r.len() != d) {
                    return Err(Error::DimensionMismatch(
                        "matrices must be square and equally sized".into(),
                    ));
                }
                Ok(CMatrix::from_fn(d, d, |i, j| c(m[i][j])))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, matrices, tolerance)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// `‖U U* − 1‖` for generator `g`.
    pub fn unitarity_defect(&self, g: usize) -> f64 {
        let m = &self.matrices[g];
        distance(
            &(m * m.adjoint()),
            &CMatrix::identity(self.dimension, self.dimension),
        )
    }

    /// `U ρ U*` for a unitary `U`.
    pub fn conjugate(&self, u: &CMatrix) -> Result<Self> {
        let ua = u.adjoint();
        Self::new(
            self.dimension,
            self.matrices.iter().map(|m| u * m * &ua).collect(),
            self.tolerance,
        )
    }

    pub fn evaluate(&self, w: &Word) -> Result<CMatrix> {
        let mut acc = CMatrix::identity(self.dimension, self.dimension);
        for l in w.letters() {
            let m = self.matrices.get(l.generator).ok_or_else(|| {
                Error::DimensionMismatch(format!("no matrix for generator {}", l.generator))
            })?;
            acc = if l.inverse {
                acc * m.adjoint()
            } else {
                acc * m
            };
        }
        Ok(acc)
    }

    /// Entries as Gaussian integers when every entry is exactly one of
    /// `0, ±1, ±i`.
    fn exact(&self) -> Option<Vec<Vec<(i64, i64)>>> {
        self.matrices
            .iter()
            .map(|m| {
                m.iter()
                    .map(|z| {
                        let ok = |x: f64| x == 0.0 || x == 1.0 || x == -1.0;
                        (ok(z.re) && ok(z.im) && (z.re == 0.0 || z.im == 0.0))
                            .then_some((z.re as i64, z.im as i64))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Square Gaussian-integer matrix stored column-major, matching nalgebra.
#[derive(Clone, PartialEq, Eq)]
struct ExactMatrix {
    n: usize,
    entries: Vec<(i64, i64)>,
}

impl ExactMatrix {
    fn identity(n: usize) -> Self {
        let mut entries = vec![(0, 0); n * n];
        for i in 0..n {
            entries[i * n + i] = (1, 0);
        }
        Self { n, entries }
    }

    fn at(&self, i: usize, j: usize) -> (i64, i64) {
        self.entries[j * self.n + i]
    }

    fn adjoint(&self) -> Self {
        let n = self.n;
        let mut entries = vec![(0, 0); n * n];
        for i in 0..n {
            for j in 0..n {
                let (re, im) = self.at(j, i);
                entries[j * n + i] = (re, -im);
            }
        }
        Self { n, entries }
    }

    fn mul(&self, other: &Self) -> Option<Self> {
        let n = self.n;
        let mut entries = vec![(0i64, 0i64); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = (0i64, 0i64);
                for k in 0..n {
                    let (a, b) = self.at(i, k);
                    let (x, y) = other.at(k, j);
                    let re = a.checked_mul(x)?.checked_sub(b.checked_mul(y)?)?;
                    let im = a.checked_mul(y)?.checked_add(b.checked_mul(x)?)?;
                    acc = (acc.0.checked_add(re)?, acc.1.checked_add(im)?);
                }
                entries[j * n + i] = acc;
            }
        }
        Some(Self { n, entries })
    }
}

/// Whether every relator of `p` evaluates to the identity. Exact when all
/// entries are in `{0, ±1, ±i}`; otherwise within the representation's tolerance.
pub fn verify_relations(r: &MatrixRep, p: &Presentation) -> Result<bool> {
    if r.matrices.len() != p.generator_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices for {} generators",
            r.matrices.len(),
            p.generator_count()
        )));
    }
    if let Some(exact) = r.exact() {
        let n = r.dimension;
        let mats: Vec<ExactMatrix> = exact
            .into_iter()
            .map(|entries| ExactMatrix { n, entries })
            .collect();
        let inverses: Vec<ExactMatrix> = mats.iter().map(ExactMatrix::adjoint).collect();
        let mut all = Some(true);
        for rel in p.relators() {
            let mut acc = Some(ExactMatrix::identity(n));
            for l in rel.letters() {
                let m = if l.inverse {
                    &inverses[l.generator]
                } else {
                    &mats[l.generator]
                };
                acc = acc.and_then(|a| a.mul(m));
            }
            match acc {
                Some(a) if a != ExactMatrix::identity(n) => return Ok(false),
                Some(_) => {}
                None => all = None,
            }
        }
        if let Some(v) = all {
            return Ok(v);
        }
    }
    let id = CMatrix::identity(r.dimension, r.dimension);
    for rel in p.relators() {
        if distance(&r.evaluate(rel)?, &id) > r.tolerance {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of `{X : XA = AX for every assigned A}`, from the singular
/// values of the stacked maps `X ↦ AX − XA`.
pub fn commutant_dimension(r: &MatrixRep) -> usize {
    let d = r.dimension;
    let n = d * d;
    if n == 0 {
        return 0;
    }
    let id = CMatrix::identity(d, d);
    let rows = (r.matrices.len() * n).max(n);
    let mut stacked = CMatrix::zeros(rows, n);
    for (k, a) in r.matrices.iter().enumerate() {
        // column-major vec: vec(AX) = (1 ⊗ A) vec X, vec(XA) = (Aᵀ ⊗ 1) vec X
        let block = id.kronecker(a) - a.transpose().kronecker(&id);
        stacked.view_mut((k * n, 0), (n, n)).copy_from(&block);
    }
    let sv = stacked.svd(false, false).singular_values;
    let scale = sv.iter().cloned().fold(1.0f64, f64::max);
    let threshold = r.tolerance.max(1e-12) * scale * n as f64;
    sv.iter().filter(|&&s| s <= threshold).count()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CentralScalar {
    Scalar(Complex64),
    NotScalar,
}

/// Whether `p` is `⟨x, y | x², y²⟩` up to relator order.
pub fn is_z2_star_z2(p: &Presentation) -> bool {
    if p.generator_count() != 2 || p.relators().len() != 2 {
        return false;
    }
    let mut rels: Vec<Word> = p.relators().iter().map(Word::free_reduce).collect();
    rels.sort_by_key(|w| w.letters().first().map(|l| l.generator));
    let ok = |w: &Word, g: usize| *w == Word::power(g, 2) || *w == Word::power(g, -2);
    ok(&rels[0], 0) && ok(&rels[1], 1)
}

/// `ω̂μ̂ + μ̂ω̂` as a multiple of the identity, if it is one.
pub fn central_element_scalar(r: &MatrixRep, p: &Presentation) -> Result<CentralScalar> {
    if !is_z2_star_z2(p) {
        return Err(Error::WrongPresentation(format!(
            "expected <omega, mu | omega^2, mu^2>, got {p}"
        )));
    }
    if r.matrices.len() != 2 {
        return Err(Error::DimensionMismatch("expected two matrices".into()));
    }
    let (w, m) = (&r.matrices[0], &r.matrices[1]);
    let z = w * m + m * w;
    let d = r.dimension;
    if d == 0 {
        return Ok(CentralScalar::NotScalar);
    }
    let lambda = z.trace() / c(d as f64);
    let scalar = CMatrix::identity(d, d) * lambda;
    Ok(if distance(&z, &scalar) <= r.tolerance {
        CentralScalar::Scalar(lambda)
    } else {
        CentralScalar::NotScalar
    })
}

/// `tr(ω̂μ̂)`, the invariant separating members of the two-dimensional family.
pub fn exchange_slide_trace(r: &MatrixRep) -> Complex64 {
    (&r.matrices[0] * &r.matrices[1]).trace()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SectorLabel {
    Bosonic,
    Fermionic,
    Mixed,
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectorLabel::Bosonic => "Bosonic",
            SectorLabel::Fermionic => "Fermionic",
            SectorLabel::Mixed => "Mixed",
        })
    }
}

/// Eigenvalue content of the exchange image. A unitary involution is
/// Hermitian with eigenvalues ±1, and the number of `+1`s is `(d + tr)/2`.
pub fn sector_analysis(r: &MatrixRep, exchange_generator: usize) -> Result<SectorLabel> {
    let a = r.matrices.get(exchange_generator).ok_or_else(|| {
        Error::DimensionMismatch(format!("no matrix for generator {exchange_generator}"))
    })?;
    let d = r.dimension;
    if distance(&(a * a), &CMatrix::identity(d, d)) > r.tolerance {
        return Err(Error::NotInvolution);
    }
    let plus = ((d as f64 + a.trace().re) / 2.0).round() as usize;
    Ok(if plus == d {
        SectorLabel::Bosonic
    } else if plus == 0 {
        SectorLabel::Fermionic
    } else {
        SectorLabel::Mixed
    })
}

/// `⟨omega, mu | omega², mu²⟩`.
pub fn z2_star_z2() -> Presentation {
    Presentation::new(["omega", "mu"], vec![Word::power(0, 2), Word::power(1, 2)])
        .expect("valid presentation")
}

/// `ω̂ = diag(1, −1)`, `μ̂ = [[cos τ, sin τ], [sin τ, −cos τ]]` for any `τ`.
pub fn rho_tau_matrices(tau: f64) -> [CMatrix; 2] {
    let (s, co) = tau.sin_cos();
    [
        CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]),
        CMatrix::from_row_slice(2, 2, &[c(co), c(s), c(s), c(-co)]),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UirFamily {
    OneDimensional {
        omega: i8,
        mu: i8,
    },
    /// The two-dimensional family parameterized by `τ ∈ (0, π)`.
    Tau,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UirCatalogEntry {
    pub name: String,
    pub dimension: usize,
    pub family: UirFamily,
}

impl UirCatalogEntry {
    /// The representation; `tau` is required for the family and ignored otherwise.
    pub fn build(&self, tau: Option<f64>, tolerance: f64) -> Result<MatrixRep> {
        match self.family {
            UirFamily::OneDimensional { omega, mu } => MatrixRep::from_real(
                &[vec![vec![omega as f64]], vec![vec![mu as f64]]],
                tolerance,
            ),
            UirFamily::Tau => {
                let tau = tau.ok_or_else(|| {
                    Error::BadParameters("the two-dimensional family needs tau".into())
                })?;
                if !(tau > 0.0 && tau < PI) {
                    return Err(Error::BadParameters(format!(
                        "tau = {tau} is outside (0, pi)"
                    )));
                }
                MatrixRep::new(2, rho_tau_matrices(tau).to_vec(), tolerance)
            }
        }
    }
}

/// Every unitary irreducible representation of `ℤ₂ * ℤ₂` up to equivalence:
/// four characters and one family of two-dimensional representations.
pub fn classify_uirs_z2star_z2() -> Vec<UirCatalogEntry> {
    let one = |name: &str, omega, mu| UirCatalogEntry {
        name: name.into(),
        dimension: 1,
        family: UirFamily::OneDimensional { omega, mu },
    };
    vec![
        one("rho1", 1, 1),
        one("rho2", 1, -1),
        one("rho3", -1, 1),
        one("rho4", -1, -1),
        UirCatalogEntry {
            name: "rho_tau".into(),
            dimension: 2,
            family: UirFamily::Tau,
        },
    ]
}

/// Pairs `(ω̂, μ̂)` of `n`-th roots of unity that satisfy `ω² = μ² = 1`.
pub fn one_dimensional_scan(n: usize, tolerance: f64) -> Result<Vec<(Complex64, Complex64)>> {
    let p = z2_star_z2();
    let roots: Vec<Complex64> = (0..n)
        .map(|k| {
            // keep the quarter turns exact so the exact path applies
            match (4 * k) % n {
                0 => {
                    let quarter = (4 * k) / n;
                    [
                        c(1.0),
                        Complex64::new(0.0, 1.0),
                        c(-1.0),
                        Complex64::new(0.0, -1.0),
                    ][quarter % 4]
                }
                _ => Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64),
            }
        })
        .collect();
    let mut out = Vec::new();
    for &w in &roots {
        for &m in &roots {
            let rep = MatrixRep::new(
                1,
                vec![
                    CMatrix::from_element(1, 1, w),
                    CMatrix::from_element(1, 1, m),
                ],
                tolerance,
            )?;
            if verify_relations(&rep, &p)? {
                out.push((w, m));
            }
        }
    }
    Ok(out)
}

/// Splits a representation of `ℤ₂ * ℤ₂` whose two images commute into
/// characters, reported by catalog name. Fails when the images do not
/// commute, since the representation then has an irreducible 2-dimensional part.
pub fn decompose_commuting(r: &MatrixRep) -> Result<Vec<String>> {
    if r.matrices.len() != 2 {
        return Err(Error::DimensionMismatch("expected two matrices".into()));
    }
    let (w, m) = (&r.matrices[0], &r.matrices[1]);
    if distance(&(w * m), &(m * w)) > r.tolerance {
        return Err(Error::Validation("images do not commute".into()));
    }
    // a generic real combination of two commuting Hermitian involutions has
    // their common eigenvectors as its eigenvectors
    let h = w * c(1.0) + m * c(std::f64::consts::SQRT_2);
    let eig = h.symmetric_eigen();
    let mut names = Vec::new();
    for k in 0..r.dimension {
        let v = eig.eigenvectors.column(k);
        let ev = |a: &CMatrix| (v.adjoint() * a * v)[(0, 0)].re.round() as i8;
        let entry = classify_uirs_z2star_z2()
            .into_iter()
            .find(|e| {
                e.family
                    == UirFamily::OneDimensional {
                        omega: ev(w),
                        mu: ev(m),
                    }
            })
            .ok_or_else(|| Error::Validation("image is not an involution".into()))?;
        names.push(entry.name);
    }
    names.sort();
    Ok(names)
}

/// Haar-distributed unitary from the QR decomposition of a complex Gaussian matrix.
pub fn random_unitary<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    // fix column phases so the distribution is uniform
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(d, |i, _| {
        let z = r[(i, i)];
        if z.norm() == 0.0 {
            c(1.0)
        } else {
            z / c(z.norm())
        }
    }));
    q * phases
}

/// Random `d`-dimensional unitary involution with a random number of `−1` eigenvalues.
pub fn random_involution<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    let u = random_unitary(d, rng);
    let signs = nalgebra::DVector::from_fn(d, |_, _| c(if rng.gen() { 1.0 } else { -1.0 }));
    &u * CMatrix::from_diagonal(&signs) * u.adjoint()
}

/// Outcome of probing random 3-dimensional assignments.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideCheck {
    pub samples: usize,
    pub violate_relations: usize,
    pub reducible: usize,
    pub irreducible: usize,
}

/// No 3-dimensional unitary representation of `ℤ₂ * ℤ₂` is irreducible:
/// random unitaries violate the relators, random involution pairs are reducible.
pub fn burnside_spot_check<R: Rng>(
    samples: usize,
    rng: &mut R,
    tolerance: f64,
) -> Result<BurnsideCheck> {
    let p = z2_star_z2();
    let mut out = BurnsideCheck {
        samples,
        ..Default::default()
    };
    for k in 0..samples {
        let mats = if k % 2 == 0 {
            vec![random_unitary(3, rng), random_unitary(3, rng)]
        } else {
            vec![random_involution(3, rng), random_involution(3, rng)]
        };
        let rep = MatrixRep::new(3, mats, tolerance)?;
        if !verify_relations(&rep, &p)? {
            out.violate_relations += 1;
        } else if commutant_dimension(&rep) > 1 {
            out.reducible += 1;
        } else {
            out.irreducible += 1;
        }
    }
    Ok(out)
}
