//! Prime 3-manifolds, connected sums, and their classification facts.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{sylow_all_cyclic, Permutation, PermutationGroup};
use crate::presentation::Presentation;
use crate::word::Word;

/// A prime manifold the library knows nothing structural about; every fact
/// is supplied by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenericPrime {
    pub name: String,
    pub pi1: Presentation,
    #[serde(default = "yes")]
    pub spinorial: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcg: Option<Presentation>,
    /// For each generator of `mcg`, the images of the `pi1` generators as
    /// token strings such as `"b^-1 a b"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcg_actions: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chiral: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homotopy_implies_isotopy: Option<bool>,
    /// Declared membership in the homotopy-triviality list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hendriks: Option<bool>,
    /// Images of the `pi1` generators in some finite permutation group,
    /// generating a faithful copy of a finite `pi1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<Vec<Permutation>>,
}

fn yes() -> bool {
    true
}

// A sum holds a handful of primes, so the Generic payload size is irrelevant.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prime {
    Lens {
        p: u64,
        q: i64,
    },
    Handle,
    /// π₁ = D*₄ₘ × ℤ_p.
    PrismSpinor {
        m: u64,
        p: u64,
    },
    /// π₁ = D'₂ᵏₘ × ℤ_p.
    PrismPrimePrime {
        k: u32,
        m: u64,
        p: u64,
    },
    FlatForm {
        index: u8,
    },
    Generic(GenericPrime),
}

impl Prime {
    pub fn lens(p: u64, q: i64) -> Result<Self> {
        Prime::Lens { p, q }.validated()
    }

    /// Checks parameters and reduces lens data to canonical form.
    pub fn validated(self) -> Result<Self> {
        match self {
            Prime::Lens { p, q } => {
                if p == 0 {
                    return Err(Error::Validation("lens space needs p >= 1".into()));
                }
                let g = (q.rem_euclid(p as i64) as u64).gcd(&p);
                if g != 1 {
                    return Err(Error::Validation(format!(
                        "gcd({p}, {q}) = {g}, expected 1"
                    )));
                }
                Ok(Prime::Lens {
                    p,
                    q: q.rem_euclid(p as i64),
                })
            }
            Prime::PrismSpinor { m, p } => {
                if m < 3 || m % 2 == 0 || p == 0 {
                    return Err(Error::Validation(format!(
                        "prism form needs odd m >= 3 and p >= 1, got m={m} p={p}"
                    )));
                }
                if (4 * m).gcd(&p) != 1 {
                    return Err(Error::Validation(format!(
                        "gcd(4m, p) = gcd({}, {p}) is not 1",
                        4 * m
                    )));
                }
                Ok(self)
            }
            Prime::PrismPrimePrime { k, m, p } => {
                if !(4..=20).contains(&k) || m < 3 || m % 2 == 0 || p == 0 {
                    return Err(Error::Validation(format!(
                        "prism form needs 4 <= k <= 20, odd m >= 3 and p >= 1, got k={k} m={m} p={p}"
                    )));
                }
                if ((1u64 << k) * m).gcd(&p) != 1 {
                    return Err(Error::Validation(format!(
                        "gcd(2^{k} m, p) is not 1 for m={m} p={p}"
                    )));
                }
                Ok(self)
            }
            Prime::FlatForm { index } => {
                if !(1..=6).contains(&index) {
                    return Err(Error::Validation(format!(
                        "flat form index {index} is not in 1..=6"
                    )));
                }
                Ok(self)
            }
            Prime::Generic(ref g) => {
                if let Some(images) = &g.realization {
                    let degree = images.first().map_or(0, Permutation::degree);
                    crate::homs::GroupHomomorphism::new(
                        &g.pi1,
                        g.name.clone(),
                        degree,
                        images.clone(),
                    )
                    .map_err(|e| Error::Validation(format!("realization of {}: {e}", g.name)))?;
                }
                if let (Some(mcg), Some(actions)) = (&g.mcg, &g.mcg_actions) {
                    if actions.len() != mcg.generator_count() {
                        return Err(Error::Validation(format!(
                            "{}: one action per mapping class generator",
                            g.name
                        )));
                    }
                    for images in actions {
                        if images.len() != g.pi1.generator_count() {
                            return Err(Error::Validation(format!(
                                "{}: action must give one image per generator",
                                g.name
                            )));
                        }
                        for w in images {
                            g.pi1.parse_word(w)?;
                        }
                    }
                }
                Ok(self)
            }
            Prime::Handle => Ok(self),
        }
    }

    pub fn is_handle(&self) -> bool {
        matches!(self, Prime::Handle)
    }

    pub fn is_irreducible(&self) -> bool {
        !self.is_handle()
    }

    /// Diffeomorphism class equality: lens spaces up to homeomorphism,
    /// everything else structurally.
    pub fn same_species(&self, other: &Prime) -> bool {
        match (self, other) {
            (Prime::Lens { p, q }, Prime::Lens { p: p2, q: q2 }) => {
                p == p2 && lens_homeomorphic(*p, *q, *q2).unwrap_or(false)
            }
            _ => self == other,
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prime::Lens { p, q } => write!(f, "L({p},{q})"),
            Prime::Handle => f.write_str("S1xS2"),
            Prime::PrismSpinor { m, p } => write!(f, "S3/(D*{} x Z{p})", 4 * m),
            Prime::PrismPrimePrime { k, m, p } => write!(f, "S3/(D'{} x Z{p})", (1u64 << k) * m),
            Prime::FlatForm { index } => write!(f, "flat form {index}"),
            Prime::Generic(g) => f.write_str(&g.name),
        }
    }
}

/// Ordered list of primes; irreducibles and handles may interleave.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSum", into = "RawSum")]
pub struct ConnectedSum {
    primes: Vec<Prime>,
}

#[derive(Serialize, Deserialize)]
struct RawSum {
    primes: Vec<Prime>,
}

impl TryFrom<RawSum> for ConnectedSum {
    type Error = Error;
    fn try_from(raw: RawSum) -> Result<Self> {
        ConnectedSum::new(raw.primes)
    }
}

impl From<ConnectedSum> for RawSum {
    fn from(s: ConnectedSum) -> Self {
        RawSum { primes: s.primes }
    }
}

impl ConnectedSum {
    pub fn new(primes: Vec<Prime>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::Validation(
                "a connected sum needs at least one prime".into(),
            ));
        }
        let primes = primes
            .into_iter()
            .enumerate()
            .map(|(i, pr)| {
                let label = pr.to_string();
                pr.validated().map_err(|e| match e {
                    Error::Validation(msg) => {
                        Error::Validation(format!("prime {} ({label}): {msg}", i + 1))
                    }
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { primes })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        // Parse first so syntax errors keep their position, then validate.
        let raw: RawSum = serde_json::from_str(text)?;
        Self::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sum serializes")
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    /// N.
    pub fn total(&self) -> usize {
        self.primes.len()
    }

    /// n.
    pub fn irreducible_count(&self) -> usize {
        self.primes.iter().filter(|p| p.is_irreducible()).count()
    }

    /// m.
    pub fn handle_count(&self) -> usize {
        self.primes.iter().filter(|p| p.is_handle()).count()
    }

    /// n_s.
    pub fn spinorial_count(&self) -> usize {
        self.primes.iter().filter(|p| is_spinorial(p)).count()
    }

    /// Diffeomorphism classes as lists of prime indices, ordered by first
    /// occurrence.
    pub fn species(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, pr) in self.primes.iter().enumerate() {
            match classes
                .iter_mut()
                .find(|c| self.primes[c[0]].same_species(pr))
            {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        classes
    }

    pub fn counts_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.total(),
            "n": self.irreducible_count(),
            "m": self.handle_count(),
            "n_s": self.spinorial_count(),
            "species": self.species().iter().map(Vec::len).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ConnectedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" # "))
    }
}

fn commutator(x: usize, y: usize) -> Word {
    Word::commutator(&Word::generator(x), &Word::generator(y))
}

/// `⟨a, b, z | a b a b⁻¹, aᵐ, b^order_b, zᵖ, [z,a], [z,b]⟩`, i.e. the
/// binary-dihedral-type group with `ab = ba⁻¹`, times `ℤ_p`.
fn prism_presentation(m: u64, order_b: u64, p: u64) -> Presentation {
    Presentation::new(
        ["a", "b", "z"],
        vec![
            Word::from_signed(&[1, 2, 1, -2]),
            Word::power(0, m as i64),
            Word::power(1, order_b as i64),
            Word::power(2, p as i64),
            commutator(2, 0),
            commutator(2, 1),
        ],
    )
    .expect("prism presentation is well formed")
}

pub fn fundamental_group(pr: &Prime) -> Result<Presentation> {
    Ok(match pr {
        Prime::Lens { p, .. } => Presentation::new(["a"], vec![Word::power(0, *p as i64)])?,
        Prime::Handle => Presentation::free(["a"]),
        Prime::PrismSpinor { m, p } => prism_presentation(*m, 4, *p),
        Prime::PrismPrimePrime { k, m, p } => prism_presentation(*m, 1 << k, *p),
        Prime::FlatForm { index: 1 } => Presentation::new(
            ["x", "y", "z"],
            vec![commutator(0, 1), commutator(0, 2), commutator(1, 2)],
        )?,
        Prime::FlatForm { index } => {
            return Err(Error::NotCataloged(format!(
                "fundamental group of flat form {index}"
            )))
        }
        Prime::Generic(g) => g.pi1.clone(),
    })
}

/// Free product of the primes' fundamental groups. Single-generator
/// factors are labelled `a, b, c, …`; otherwise labels get the 1-based
/// prime index appended.
pub fn fundamental_group_sum(s: &ConnectedSum) -> Result<Presentation> {
    let parts = s
        .primes()
        .iter()
        .map(fundamental_group)
        .collect::<Result<Vec<_>>>()?;
    let letters = parts.iter().all(|p| p.generator_count() == 1) && parts.len() <= 26;
    Presentation::free_product(&parts, |f, label| {
        if letters {
            char::from(b'a' + f as u8).to_string()
        } else {
            format!("{label}{}", f + 1)
        }
    })
}

/// Images of the generators of `fundamental_group(pr)` in a permutation group
/// isomorphic to π₁, when π₁ is finite and constructible.
pub fn pi1_realization(pr: &Prime) -> Result<(PermutationGroup, Vec<Permutation>)> {
    // Points are laid out as consecutive blocks.
    fn cycle_on(degree: usize, start: usize, len: usize) -> Vec<usize> {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in 0..len {
            images[start + i] = start + (i + 1) % len;
        }
        images
    }
    fn prism(m: u64, order_b: u64, p: u64) -> Vec<Permutation> {
        let (m, nb) = (m as usize, order_b as usize);
        let z = PermutationGroup::cyclic(p);
        let zd = z.degree();
        let degree = m + nb + zd;
        let a = cycle_on(degree, 0, m);
        let mut b = cycle_on(degree, m, nb);
        for (i, bi) in b.iter_mut().take(m).enumerate() {
            *bi = (m - i) % m;
        }
        let mut zi: Vec<usize> = (0..degree).collect();
        if let Some(g) = z.generators().first() {
            for (i, &j) in g.images().iter().enumerate() {
                zi[m + nb + i] = m + nb + j;
            }
        }
        [a, b, zi]
            .into_iter()
            .map(|v| Permutation::from_images(v).unwrap())
            .collect()
    }
    let (name, images) = match pr {
        Prime::Lens { p, .. } => {
            let g = PermutationGroup::cyclic(*p);
            let gen = g
                .generators()
                .first()
                .cloned()
                .unwrap_or_else(|| g.identity());
            (format!("Z{p}"), vec![gen])
        }
        Prime::PrismSpinor { m, p } => (format!("D*{} x Z{p}", 4 * m), prism(*m, 4, *p)),
        Prime::PrismPrimePrime { k, m, p } => (
            format!("D'{} x Z{p}", (1u64 << k) * m),
            prism(*m, 1 << k, *p),
        ),
        Prime::Generic(GenericPrime {
            name,
            realization: Some(images),
            ..
        }) => (name.clone(), images.clone()),
        other => {
            return Err(Error::NotCataloged(format!(
                "finite realization of π₁({other})"
            )))
        }
    };
    let degree = images.first().map_or(0, Permutation::degree);
    let group =
        PermutationGroup::new(name, degree, images.clone())?.with_degree_limit(degree.max(1));
    Ok((group, images))
}

pub fn is_spinorial(pr: &Prime) -> bool {
    match pr {
        Prime::Lens { .. } | Prime::Handle => false,
        Prime::PrismSpinor { .. } | Prime::PrismPrimePrime { .. } | Prime::FlatForm { .. } => true,
        Prime::Generic(g) => g.spinorial,
    }
}

pub fn is_spinorial_sum(s: &ConnectedSum) -> bool {
    s.primes().iter().any(is_spinorial)
}

/// Whether `pr` belongs to the list of primes on which homotopy implies
/// isotopy: handles, plus spherical forms whose π₁ has cyclic Sylow subgroups.
pub fn in_hendriks_list(pr: &Prime) -> Result<bool> {
    match pr {
        Prime::Handle => Ok(true),
        Prime::FlatForm { .. } => Ok(false),
        Prime::Generic(GenericPrime {
            hendriks: Some(v), ..
        }) => Ok(*v),
        Prime::Generic(GenericPrime {
            realization: None,
            name,
            ..
        }) => Err(Error::NotCataloged(format!(
            "{name} declares neither list membership nor a finite π₁"
        ))),
        _ => {
            let (group, _) = pi1_realization(pr)?;
            sylow_all_cyclic(&group)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtensionVerdict {
    /// The frame-fixing and the full mapping class group agree.
    Isomorphic,
    /// The frame-fixing group is a central ℤ₂ extension of the full one.
    CentralZ2Extension,
}

pub fn extension_type(s: &ConnectedSum) -> ExtensionVerdict {
    if is_spinorial_sum(s) {
        ExtensionVerdict::CentralZ2Extension
    } else {
        ExtensionVerdict::Isomorphic
    }
}

/// Rank of the ℤ₂-vector space of twists in the kernel: `m + n_s`.
pub fn kernel_rank(s: &ConnectedSum) -> Result<usize> {
    for pr in s.primes() {
        if let Prime::Generic(g) = pr {
            if g.homotopy_implies_isotopy != Some(true) {
                return Err(Error::AssumptionViolated(format!(
                    "{} is not known to have homotopy implying isotopy",
                    g.name
                )));
            }
        }
    }
    Ok(s.handle_count() + s.spinorial_count())
}

fn check_lens(p: u64, qs: &[i64]) -> Result<(i128, Vec<i128>)> {
    if p == 0 {
        return Err(Error::BadParameters("p must be at least 1".into()));
    }
    let p = p as i128;
    let mut out = Vec::new();
    for &q in qs {
        let r = (q as i128).rem_euclid(p);
        if r.gcd(&p) != 1 {
            return Err(Error::BadParameters(format!("gcd({p}, {q}) is not 1")));
        }
        out.push(r);
    }
    Ok((p, out))
}

/// `L(p,q) ≅ L(p,q')` iff `q' ≡ ±q` or `qq' ≡ ±1 (mod p)`.
pub fn lens_homeomorphic(p: u64, q: i64, q2: i64) -> Result<bool> {
    let (p, v) = check_lens(p, &[q, q2])?;
    let (q, q2) = (v[0], v[1]);
    let prod = (q * q2).rem_euclid(p);
    Ok((q2 - q).rem_euclid(p) == 0
        || (q2 + q).rem_euclid(p) == 0
        || prod == 1 % p
        || prod == (p - 1) % p)
}

/// `L(p,q) ≃ L(p,q')` iff `qq' ≡ ±n² (mod p)` for some `n`.
pub fn lens_homotopy_equivalent(p: u64, q: i64, q2: i64) -> Result<bool> {
    let (p, v) = check_lens(p, &[q, q2])?;
    let prod = (v[0] * v[1]).rem_euclid(p);
    Ok((0..p).any(|n| {
        let sq = (n * n).rem_euclid(p);
        sq == prod || (p - sq).rem_euclid(p) == prod
    }))
}

/// Mapping class group of a lens space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LensMcg {
    Trivial,
    Z2,
    Z4,
    Z2xZ2,
}

impl LensMcg {
    pub fn name(self) -> &'static str {
        match self {
            LensMcg::Trivial => "Trivial",
            LensMcg::Z2 => "Z2",
            LensMcg::Z4 => "Z4",
            LensMcg::Z2xZ2 => "Z2xZ2",
        }
    }

    pub fn order(self) -> u64 {
        match self {
            LensMcg::Trivial => 1,
            LensMcg::Z2 => 2,
            LensMcg::Z4 | LensMcg::Z2xZ2 => 4,
        }
    }
}

impl fmt::Display for LensMcg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn lens_mcg(p: u64, q: i64) -> Result<LensMcg> {
    let (p, v) = check_lens(p, &[q])?;
    if p <= 2 {
        return Ok(LensMcg::Trivial);
    }
    let q = v[0];
    let sq = (q * q).rem_euclid(p);
    Ok(if sq == 1 && q != 1 && q != p - 1 {
        LensMcg::Z2xZ2
    } else if sq == p - 1 {
        LensMcg::Z4
    } else {
        LensMcg::Z2
    })
}
