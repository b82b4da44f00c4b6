//! Finitely presented groups and the free-product normal form.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSymbol {
    pub id: usize,
    pub label: String,
}

/// One free factor: a block of generators together with the relators that
/// live entirely inside it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub generators: Vec<usize>,
    pub relators: Vec<usize>,
}

/// Generators and relators. Optionally records a free-product splitting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct Presentation {
    generators: Vec<GeneratorSymbol>,
    relators: Vec<Word>,
    factors: Option<Vec<Factor>>,
}

impl Presentation {
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        relators: Vec<Word>,
    ) -> Result<Self> {
        let generators: Vec<GeneratorSymbol> = labels
            .into_iter()
            .enumerate()
            .map(|(id, l)| GeneratorSymbol {
                id,
                label: l.into(),
            })
            .collect();
        let mut seen = HashMap::new();
        for g in &generators {
            if g.label.is_empty() || g.label.contains(char::is_whitespace) || g.label.contains('^')
            {
                return Err(Error::Validation(format!(
                    "bad generator label {:?}",
                    g.label
                )));
            }
            if seen.insert(g.label.clone(), g.id).is_some() {
                return Err(Error::Validation(format!(
                    "duplicate generator label {:?}",
                    g.label
                )));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(m) = r.max_generator() {
                if m >= generators.len() {
                    return Err(Error::UnknownGenerator(format!(
                        "relator {i} uses generator {m}"
                    )));
                }
            }
        }
        Ok(Self {
            generators,
            relators,
            factors: None,
        })
    }

    /// Free group on the given labels.
    pub fn free<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        Self::new(labels, Vec::new()).expect("free presentation is valid")
    }

    /// Attaches a free-product splitting given as blocks of generator ids.
    /// Every relator must use generators from exactly one block.
    pub fn with_factors(mut self, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; self.generators.len()];
        for (f, block) in blocks.iter().enumerate() {
            for &g in block {
                if g >= owner.len() {
                    return Err(Error::UnknownGenerator(format!(
                        "factor {f} names generator {g}"
                    )));
                }
                if owner[g] != usize::MAX {
                    return Err(Error::Validation(format!(
                        "generator {g} appears in two factors"
                    )));
                }
                owner[g] = f;
            }
        }
        if let Some(g) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Validation(format!(
                "generator {g} belongs to no factor"
            )));
        }
        let mut factors: Vec<Factor> = blocks
            .into_iter()
            .map(|generators| Factor {
                generators,
                relators: Vec::new(),
            })
            .collect();
        for (i, r) in self.relators.iter().enumerate() {
            let mut fs = r.letters().iter().map(|l| owner[l.generator]);
            let Some(f) = fs.next() else { continue };
            if fs.any(|g| g != f) {
                return Err(Error::Validation(format!(
                    "relator {i} spans several factors"
                )));
            }
            factors[f].relators.push(i);
        }
        self.factors = Some(factors);
        Ok(self)
    }

    /// Free product of the given presentations; generators are relabelled
    /// with `labeller(factor index, local label)`.
    pub fn free_product(
        parts: &[Presentation],
        labeller: impl Fn(usize, &str) -> String,
    ) -> Result<Self> {
        let mut labels = Vec::new();
        let mut relators = Vec::new();
        let mut blocks = Vec::new();
        for (f, p) in parts.iter().enumerate() {
            let offset = labels.len();
            blocks.push((offset..offset + p.generator_count()).collect());
            labels.extend(p.generators.iter().map(|g| labeller(f, &g.label)));
            for r in &p.relators {
                relators.push(
                    r.letters()
                        .iter()
                        .map(|l| Letter::new(l.generator + offset, l.inverse))
                        .collect(),
                );
            }
        }
        Self::new(labels, relators)?.with_factors(blocks)
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn factors(&self) -> Option<&[Factor]> {
        self.factors.as_deref()
    }

    pub fn generator_id(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    /// Parses whitespace-separated tokens such as `a b^-1 a^2`. `1` and the
    /// empty string denote the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Validation(format!("bad exponent in token {tok:?}")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let g = self
                .generator_id(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            letters.extend(Word::power(g, exp).into_letters());
        }
        Ok(Word::from_letters(letters))
    }

    pub fn parse_tokens(&self, tokens: &[String]) -> Result<Word> {
        self.parse_word(&tokens.join(" "))
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display_with(&self.labels()).to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawPresentation = serde_json::from_str(text)?;
        raw.try_into()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(RawPresentation::from(self)).expect("presentation serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RawPresentation::from(self)).expect("presentation serializes")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.labels();
        write!(f, "< {} |", labels.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            f.write_str(if i > 0 { ", " } else { " " })?;
            write!(f, "{}", r.display_with(&labels))?;
        }
        f.write_str(" >")
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct RawPresentation {
    generators: Vec<String>,
    #[serde(default)]
    relators: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<Vec<String>>>,
}

impl TryFrom<RawPresentation> for Presentation {
    type Error = Error;

    fn try_from(raw: RawPresentation) -> Result<Self> {
        let free = Presentation::new(raw.generators, Vec::new())?;
        let relators = raw
            .relators
            .iter()
            .map(|r| free.parse_tokens(r))
            .collect::<Result<Vec<_>>>()?;
        let p = Presentation::new(free.labels(), relators)?;
        match raw.factors {
            None => Ok(p),
            Some(blocks) => {
                let blocks = blocks
                    .iter()
                    .map(|b| {
                        b.iter()
                            .map(|l| {
                                p.generator_id(l)
                                    .ok_or_else(|| Error::UnknownGenerator(l.clone()))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                p.with_factors(blocks)
            }
        }
    }
}

impl From<Presentation> for RawPresentation {
    fn from(p: Presentation) -> Self {
        RawPresentation::from(&p)
    }
}

impl From<&Presentation> for RawPresentation {
    fn from(p: &Presentation) -> Self {
        let labels = p.labels();
        Self {
            generators: labels.clone(),
            relators: p.relators.iter().map(|r| r.to_tokens(&labels)).collect(),
            factors: p.factors.as_ref().map(|fs| {
                fs.iter()
                    .map(|f| f.generators.iter().map(|&g| labels[g].clone()).collect())
                    .collect()
            }),
        }
    }
}

/// Order of a cyclic factor: `Some(k)` for `⟨g | g^k⟩`, `None` for `ℤ`.
fn cyclic_factor_order(p: &Presentation, factor: &Factor) -> Result<(usize, Option<u64>)> {
    let [g] = factor.generators[..] else {
        return Err(Error::UnsupportedPresentation(format!(
            "factor with {} generators is not cyclic",
            factor.generators.len()
        )));
    };
    let mut order: Option<u64> = None;
    for &ri in &factor.relators {
        let r = p.relators[ri].free_reduce();
        let sum = r.exponent_sums(p.generator_count())[g];
        if r.len() as i64 != sum.abs() {
            return Err(Error::UnsupportedPresentation(format!(
                "relator {ri} is not a power"
            )));
        }
        let k = sum.unsigned_abs();
        if k == 0 {
            continue;
        }
        order = Some(match order {
            None => k,
            Some(o) => num_integer::gcd(o, k),
        });
    }
    Ok((g, order))
}

/// Alternating syllable normal form in a free product of cyclic groups.
///
/// Syllable exponents are reduced into `1..k` for a factor of order `k` and
/// kept signed for infinite cyclic factors. The result is empty iff `w` is
/// the identity.
pub fn free_product_normal_form(p: &Presentation, w: &Word) -> Result<Word> {
    let factors = p.factors().ok_or_else(|| {
        Error::UnsupportedPresentation("presentation has no factor structure".into())
    })?;
    let mut factor_of = vec![0usize; p.generator_count()];
    let mut info = Vec::with_capacity(factors.len());
    for (f, factor) in factors.iter().enumerate() {
        let (g, order) = cyclic_factor_order(p, factor)?;
        factor_of[g] = f;
        info.push((g, order));
    }
    if let Some(m) = w.max_generator() {
        if m >= p.generator_count() {
            return Err(Error::UnknownGenerator(format!("generator {m}")));
        }
    }
    let canonical = |f: usize, e: i64| -> i64 {
        match info[f].1 {
            Some(k) => e.rem_euclid(k as i64),
            None => e,
        }
    };
    // stack of (factor, exponent) syllables
    let mut syllables: Vec<(usize, i64)> = Vec::new();
    for l in w.letters() {
        let f = factor_of[l.generator];
        match syllables.last_mut() {
            Some((top, e)) if *top == f => {
                *e = canonical(f, *e + l.sign());
                if *e == 0 {
                    syllables.pop();
                }
            }
            _ => {
                let e = canonical(f, l.sign());
                if e != 0 {
                    syllables.push((f, e));
                }
            }
        }
    }
    Ok(syllables
        .into_iter()
        .flat_map(|(f, e)| Word::power(info[f].0, e).into_letters())
        .collect())
}
