//! Mapping-class generators of a connected sum, their action on `π₁`, the
//! particle group, and the presentations that are known in closed form.
//!
//! Prime and generator indices are 0-based in the data types and 1-based in
//! display names, so `SlideIrreducible { through: 0, along: 0, slid: 1 }`
//! prints as `mu(i=1,j=1,k=2)`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::decider::{decide, Budget, Verdict};
use crate::error::{Error, Result};
use crate::manifold::{fundamental_group, is_spinorial, lens_mcg, ConnectedSum, LensMcg, Prime};
use crate::perm::Permutation;
use crate::presentation::{free_product_normal_form, Presentation};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum McgGenerator {
    /// Generator `index` of the prime's own mapping class group.
    Internal {
        prime: usize,
        index: usize,
    },
    /// Inverts the handle's `π₁` generator.
    Spin {
        handle: usize,
    },
    /// Swaps two diffeomorphic primes slot by slot.
    Exchange {
        first: usize,
        second: usize,
    },
    /// Conjugates every generator of irreducible prime `slid` by generator
    /// `along` of prime `through`.
    SlideIrreducible {
        through: usize,
        along: usize,
        slid: usize,
    },
    /// `g_handle ↦ g_{through,along}⁻¹ g_handle`.
    SlideHandleLeft {
        through: usize,
        along: usize,
        handle: usize,
    },
    /// `g_handle ↦ g_handle g_{through,along}`.
    SlideHandleRight {
        through: usize,
        along: usize,
        handle: usize,
    },
    NeckTwist {
        prime: usize,
    },
    HandleTwist {
        handle: usize,
    },
}

impl McgGenerator {
    pub fn is_slide(&self) -> bool {
        matches!(
            self,
            McgGenerator::SlideIrreducible { .. }
                | McgGenerator::SlideHandleLeft { .. }
                | McgGenerator::SlideHandleRight { .. }
        )
    }

    pub fn is_twist(&self) -> bool {
        matches!(
            self,
            McgGenerator::NeckTwist { .. } | McgGenerator::HandleTwist { .. }
        )
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("generator serializes");
        v["name"] = self.to_string().into();
        v
    }
}

impl fmt::Display for McgGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            McgGenerator::Internal { prime, index } => {
                write!(f, "internal({},{})", prime + 1, index + 1)
            }
            McgGenerator::Spin { handle } => write!(f, "spin({})", handle + 1),
            McgGenerator::Exchange { first, second } => {
                write!(f, "exchange({},{})", first + 1, second + 1)
            }
            McgGenerator::SlideIrreducible {
                through,
                along,
                slid,
            } => {
                write!(f, "mu(i={},j={},k={})", through + 1, along + 1, slid + 1)
            }
            McgGenerator::SlideHandleLeft {
                through,
                along,
                handle,
            } => {
                write!(
                    f,
                    "lambda(i={},j={},k={})",
                    through + 1,
                    along + 1,
                    handle + 1
                )
            }
            McgGenerator::SlideHandleRight {
                through,
                along,
                handle,
            } => {
                write!(f, "rho(i={},j={},k={})", through + 1, along + 1, handle + 1)
            }
            McgGenerator::NeckTwist { prime } => write!(f, "neck_twist({})", prime + 1),
            McgGenerator::HandleTwist { handle } => write!(f, "handle_twist({})", handle + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCounts {
    pub internal: usize,
    pub spins: usize,
    pub exchanges: usize,
    pub slides_mu: usize,
    pub slides_lambda: usize,
    pub slides_rho: usize,
    pub neck_twists: usize,
    pub handle_twists: usize,
}

impl GeneratorCounts {
    pub fn total(&self) -> usize {
        self.internal
            + self.spins
            + self.exchanges
            + self.slides_mu
            + self.slides_lambda
            + self.slides_rho
            + self.neck_twists
            + self.handle_twists
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McgGeneratorSet {
    pub sum: ConnectedSum,
    pub generators: Vec<McgGenerator>,
    pub counts: GeneratorCounts,
}

/// The mapping class group of a single prime as far as it is cataloged,
/// together with its action on the prime's `π₁` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalMcg {
    pub presentation: Presentation,
    /// Orders of the generators when the group is their direct product.
    pub cyclic_orders: Option<Vec<u64>>,
    /// Per generator, images of the prime's `π₁` generators.
    pub actions: Option<Vec<Vec<Word>>>,
    pub inverse_actions: Option<Vec<Vec<Word>>>,
}

/// Labels, relators, cyclic orders, actions and inverse actions.
type LensInternalData = (
    Vec<&'static str>,
    Vec<Word>,
    Vec<u64>,
    Vec<Vec<Word>>,
    Vec<Vec<Word>>,
);

/// Cataloged internal mapping class group of an irreducible prime. Lens
/// spaces act on `π₁ = ℤ_p` through `a ↦ a⁻¹` and, when present, `a ↦ a^q`.
/// Handles have none here: their spin and twist are listed separately.
pub fn internal_mcg(pr: &Prime) -> Result<Option<InternalMcg>> {
    match pr {
        Prime::Lens { p, q } => {
            let (p, q) = (*p as i64, *q);
            let power = |e: i64| vec![vec![Word::power(0, e)]];
            let (labels, relators, orders, actions, inverses): LensInternalData =
                match lens_mcg(p as u64, q)? {
                    LensMcg::Trivial => return Ok(None),
                    LensMcg::Z2 => (
                        vec!["c"],
                        vec![Word::power(0, 2)],
                        vec![2],
                        power(-1),
                        power(-1),
                    ),
                    // q² ≡ −1, so the inverse of a ↦ a^q is a ↦ a^(−q)
                    LensMcg::Z4 => (
                        vec!["c"],
                        vec![Word::power(0, 4)],
                        vec![4],
                        power(q),
                        power(p - q),
                    ),
                    LensMcg::Z2xZ2 => {
                        let both = vec![vec![Word::power(0, -1)], vec![Word::power(0, q)]];
                        (
                            vec!["c", "d"],
                            vec![
                                Word::power(0, 2),
                                Word::power(1, 2),
                                Word::commutator(&Word::generator(0), &Word::generator(1)),
                            ],
                            vec![2, 2],
                            both.clone(),
                            both,
                        )
                    }
                };
            Ok(Some(InternalMcg {
                presentation: Presentation::new(labels, relators)?,
                cyclic_orders: Some(orders),
                actions: Some(actions),
                inverse_actions: Some(inverses),
            }))
        }
        Prime::Generic(g) => {
            let Some(mcg) = &g.mcg else { return Ok(None) };
            let parse = |rows: &Vec<Vec<String>>| -> Result<Vec<Vec<Word>>> {
                rows.iter()
                    .map(|images| images.iter().map(|w| g.pi1.parse_word(w)).collect())
                    .collect()
            };
            Ok(Some(InternalMcg {
                presentation: mcg.clone(),
                cyclic_orders: None,
                actions: g.mcg_actions.as_ref().map(parse).transpose()?,
                inverse_actions: None,
            }))
        }
        _ => Ok(None),
    }
}

/// Layout of the free-product presentation of a sum: generator offset and
/// count per prime.
#[derive(Debug, Clone)]
struct Layout {
    offsets: Vec<usize>,
    sizes: Vec<usize>,
}

impl Layout {
    fn of(s: &ConnectedSum) -> Result<Self> {
        let sizes = s
            .primes()
            .iter()
            .map(|p| fundamental_group(p).map(|g| g.generator_count()))
            .collect::<Result<Vec<_>>>()?;
        let offsets = sizes
            .iter()
            .scan(0, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        Ok(Self { offsets, sizes })
    }

    fn generator(&self, prime: usize, index: usize) -> usize {
        self.offsets[prime] + index
    }

    fn total(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// Complete generating set in the order: internals, spins, exchanges,
/// μ slides, λ slides, ρ slides, neck twists, handle twists.
pub fn enumerate_generators(s: &ConnectedSum) -> Result<McgGeneratorSet> {
    let layout = Layout::of(s)?;
    let primes = s.primes();
    let mut gens = Vec::new();
    let mut counts = GeneratorCounts::default();
    for (i, pr) in primes.iter().enumerate() {
        if let Some(m) = internal_mcg(pr)? {
            for index in 0..m.presentation.generator_count() {
                gens.push(McgGenerator::Internal { prime: i, index });
                counts.internal += 1;
            }
        }
    }
    let handles: Vec<usize> = (0..primes.len())
        .filter(|&i| primes[i].is_handle())
        .collect();
    let irreducibles: Vec<usize> = (0..primes.len())
        .filter(|&i| primes[i].is_irreducible())
        .collect();
    for &h in &handles {
        gens.push(McgGenerator::Spin { handle: h });
        counts.spins += 1;
    }
    for class in s.species() {
        for (a, &first) in class.iter().enumerate() {
            for &second in &class[a + 1..] {
                gens.push(McgGenerator::Exchange { first, second });
                counts.exchanges += 1;
            }
        }
    }
    // slides are ordered by (through, along, slid)
    let slides = |targets: &[usize]| {
        let mut out = Vec::new();
        for i in 0..primes.len() {
            for j in 0..layout.sizes[i] {
                out.extend(targets.iter().filter(|&&k| k != i).map(|&k| (i, j, k)));
            }
        }
        out
    };
    for (through, along, slid) in slides(&irreducibles) {
        gens.push(McgGenerator::SlideIrreducible {
            through,
            along,
            slid,
        });
        counts.slides_mu += 1;
    }
    let handle_slides = slides(&handles);
    for &(through, along, handle) in &handle_slides {
        gens.push(McgGenerator::SlideHandleLeft {
            through,
            along,
            handle,
        });
        counts.slides_lambda += 1;
    }
    for &(through, along, handle) in &handle_slides {
        gens.push(McgGenerator::SlideHandleRight {
            through,
            along,
            handle,
        });
        counts.slides_rho += 1;
    }
    for (i, pr) in primes.iter().enumerate() {
        if is_spinorial(pr) {
            gens.push(McgGenerator::NeckTwist { prime: i });
            counts.neck_twists += 1;
        }
    }
    for &h in &handles {
        gens.push(McgGenerator::HandleTwist { handle: h });
        counts.handle_twists += 1;
    }
    Ok(McgGeneratorSet {
        sum: s.clone(),
        generators: gens,
        counts,
    })
}

/// An endomorphism of a finitely presented group, given by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub images: Vec<Word>,
}

impl Automorphism {
    pub fn identity(generators: usize) -> Self {
        Self {
            images: (0..generators).map(Word::generator).collect(),
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(g, w)| *w == Word::generator(g))
    }

    pub fn to_json_value(&self, p: &Presentation) -> serde_json::Value {
        let labels = p.labels();
        serde_json::Value::Object(
            labels
                .iter()
                .zip(&self.images)
                .map(|(l, w)| (l.clone(), serde_json::Value::String(p.format_word(w))))
                .collect(),
        )
    }
}

fn check_compatible(s: &ConnectedSum, p: &Presentation) -> Result<Layout> {
    let layout = Layout::of(s)?;
    let expected: Vec<usize> = layout.sizes.clone();
    let found: Option<Vec<usize>> = p
        .factors()
        .map(|fs| fs.iter().map(|f| f.generators.len()).collect());
    if p.generator_count() != layout.total() || found.is_some_and(|f| f != expected) {
        return Err(Error::IncompatiblePresentation(format!(
            "presentation with {} generators does not match the sum {s}",
            p.generator_count()
        )));
    }
    Ok(layout)
}

fn induced(
    s: &ConnectedSum,
    g: &McgGenerator,
    p: &Presentation,
    inverse: bool,
) -> Result<Automorphism> {
    let layout = check_compatible(s, p)?;
    let n = s.total();
    let check = |i: usize| {
        if i < n {
            Ok(())
        } else {
            Err(Error::IncompatiblePresentation(format!(
                "{g} refers to prime {} of {n}",
                i + 1
            )))
        }
    };
    let mut aut = Automorphism::identity(layout.total());
    let gen = |i: usize, j: usize| -> Result<Word> {
        if j >= layout.sizes[i] {
            return Err(Error::IncompatiblePresentation(format!(
                "{g}: prime {} has no generator {}",
                i + 1,
                j + 1
            )));
        }
        Ok(Word::generator(layout.generator(i, j)))
    };
    match *g {
        McgGenerator::Internal { prime, index } => {
            check(prime)?;
            let m = internal_mcg(&s.primes()[prime])?.ok_or_else(|| {
                Error::NotCataloged(format!("mapping class group of prime {}", prime + 1))
            })?;
            let table = if inverse {
                &m.inverse_actions
            } else {
                &m.actions
            };
            let rows = table
                .as_ref()
                .ok_or_else(|| Error::NotCataloged(format!("action of {g} on π₁")))?;
            let row = rows.get(index).ok_or_else(|| {
                Error::IncompatiblePresentation(format!("{g} is not a cataloged generator"))
            })?;
            let shift: Vec<Word> = (0..layout.sizes[prime])
                .map(|j| Word::generator(layout.generator(prime, j)))
                .collect();
            for (j, w) in row.iter().enumerate() {
                aut.images[layout.generator(prime, j)] = w.substitute(&shift);
            }
        }
        McgGenerator::Spin { handle } => {
            check(handle)?;
            let x = layout.generator(handle, 0);
            aut.images[x] = Word::generator(x).inverse();
        }
        McgGenerator::Exchange { first, second } => {
            check(first)?;
            check(second)?;
            if layout.sizes[first] != layout.sizes[second] {
                return Err(Error::IncompatiblePresentation(format!(
                    "{g} between primes of different shapes"
                )));
            }
            for j in 0..layout.sizes[first] {
                let (x, y) = (layout.generator(first, j), layout.generator(second, j));
                aut.images.swap(x, y);
            }
        }
        McgGenerator::SlideIrreducible {
            through,
            along,
            slid,
        } => {
            check(through)?;
            check(slid)?;
            let c = gen(through, along)?;
            let (c, ci) = if inverse {
                (c.inverse(), c)
            } else {
                (c.clone(), c.inverse())
            };
            for l in 0..layout.sizes[slid] {
                let x = layout.generator(slid, l);
                aut.images[x] = ci.concat(&Word::generator(x)).concat(&c);
            }
        }
        McgGenerator::SlideHandleLeft {
            through,
            along,
            handle,
        } => {
            check(through)?;
            check(handle)?;
            let c = gen(through, along)?;
            let x = layout.generator(handle, 0);
            let left = if inverse { c } else { c.inverse() };
            aut.images[x] = left.concat(&Word::generator(x));
        }
        McgGenerator::SlideHandleRight {
            through,
            along,
            handle,
        } => {
            check(through)?;
            check(handle)?;
            let c = gen(through, along)?;
            let x = layout.generator(handle, 0);
            let right = if inverse { c.inverse() } else { c };
            aut.images[x] = Word::generator(x).concat(&right);
        }
        // twists act trivially on π₁
        McgGenerator::NeckTwist { prime } => check(prime)?,
        McgGenerator::HandleTwist { handle } => check(handle)?,
    }
    Ok(aut)
}

/// Action of `g` on the generators of `p = fundamental_group_sum(s)`.
pub fn induced_automorphism(
    s: &ConnectedSum,
    g: &McgGenerator,
    p: &Presentation,
) -> Result<Automorphism> {
    induced(s, g, p, false)
}

/// Action of `g⁻¹`.
pub fn inverse_automorphism(
    s: &ConnectedSum,
    g: &McgGenerator,
    p: &Presentation,
) -> Result<Automorphism> {
    induced(s, g, p, true)
}

/// Proves `w` trivial in `p`, through the free-product normal form when the
/// presentation has cyclic factors and through the word decider otherwise.
pub fn certify_trivial(p: &Presentation, w: &Word, budget: &Budget) -> Result<bool> {
    match free_product_normal_form(p, w) {
        Ok(nf) => Ok(nf.is_empty()),
        Err(Error::UnsupportedPresentation(_)) => {
            Ok(matches!(decide(p, w, *budget), Verdict::Trivial { .. }))
        }
        Err(e) => Err(e),
    }
}

/// Per-relator certificates that `aut` is an endomorphism of `p`.
pub fn certify_endomorphism(
    p: &Presentation,
    aut: &Automorphism,
    budget: &Budget,
) -> Result<Vec<bool>> {
    p.relators()
        .iter()
        .map(|r| certify_trivial(p, &aut.apply(r), budget))
        .collect()
}

/// Whether `inverse ∘ aut` fixes every generator up to certified triviality.
pub fn certify_inverse(
    p: &Presentation,
    aut: &Automorphism,
    inverse: &Automorphism,
    budget: &Budget,
) -> Result<bool> {
    let both = inverse.compose(aut);
    for (g, w) in both.images.iter().enumerate() {
        if !certify_trivial(p, &w.concat(&Word::generator(g).inverse()), budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_rp3_pair(s: &ConnectedSum) -> bool {
    s.primes().len() == 2 && s.primes().iter().all(|p| *p == Prime::Lens { p: 2, q: 1 })
}

/// Cataloged presentation of the mapping class group for a single lens
/// space, a single handle, `ℝP³ # ℝP³`, or a generic prime carrying one.
pub fn mcg_presentation(s: &ConnectedSum) -> Result<Presentation> {
    let primes = s.primes();
    if is_rp3_pair(s) {
        return Presentation::new(["omega", "mu"], vec![Word::power(0, 2), Word::power(1, 2)]);
    }
    match primes {
        [pr @ Prime::Lens { .. }] => Ok(match internal_mcg(pr)? {
            Some(m) => m.presentation,
            None => Presentation::free(Vec::<String>::new()),
        }),
        [Prime::Handle] => Presentation::new(
            ["t", "s"],
            vec![
                Word::power(0, 2),
                Word::power(1, 2),
                Word::commutator(&Word::generator(0), &Word::generator(1)),
            ],
        ),
        [Prime::Generic(g)] if g.mcg.is_some() => Ok(g.mcg.clone().unwrap()),
        _ => Err(Error::UnsupportedSum(format!(
            "no cataloged presentation for {s}"
        ))),
    }
}

/// `⟨ω, μ₁₂, μ₂₁ | ω², μ₁₂², μ₂₁², ω μ₁₂ ω⁻¹ μ₂₁⁻¹⟩` for `ℝP³ # ℝP³`.
pub fn mcg_presentation_three_generator(s: &ConnectedSum) -> Result<Presentation> {
    if !is_rp3_pair(s) {
        return Err(Error::UnsupportedSum(format!(
            "no three-generator form for {s}"
        )));
    }
    Presentation::new(
        ["omega", "mu12", "mu21"],
        vec![
            Word::power(0, 2),
            Word::power(1, 2),
            Word::power(2, 2),
            Word::from_signed(&[1, 2, -1, -3]),
        ],
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectReport {
    pub slide_generators: Vec<McgGenerator>,
    pub particle_generators: Vec<McgGenerator>,
    /// The slide subgroup has a particle-group complement; known when the
    /// sum has no handles.
    pub splits: bool,
    pub particle_group_order: Option<u64>,
}

pub fn decompose_semidirect(s: &ConnectedSum) -> Result<SemidirectReport> {
    let set = enumerate_generators(s)?;
    let (slide_generators, rest): (Vec<_>, Vec<_>) =
        set.generators.iter().partition(|g| g.is_slide());
    let particle_generators = rest
        .into_iter()
        .filter(|g: &McgGenerator| !g.is_twist())
        .collect();
    Ok(SemidirectReport {
        slide_generators,
        particle_generators,
        splits: s.handle_count() == 0,
        particle_group_order: ParticleStructure::for_sum(s).ok().and_then(|p| p.order()),
    })
}

/// How words in an internal group are brought to normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reducer {
    /// Direct product of cyclic groups of the given orders (0 for ℤ).
    Cyclic(Vec<u64>),
    /// Free product normal form; needs cyclic factors.
    FreeProduct,
    /// Free reduction only. Equal elements may get different words.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalGroup {
    pub presentation: Presentation,
    pub reducer: Reducer,
}

impl InternalGroup {
    pub fn cyclic_product(orders: &[u64]) -> Self {
        let labels: Vec<String> = (0..orders.len()).map(|i| format!("g{}", i + 1)).collect();
        let mut relators: Vec<Word> = orders
            .iter()
            .enumerate()
            .filter(|&(_, &k)| k > 0)
            .map(|(g, &k)| Word::power(g, k as i64))
            .collect();
        for a in 0..orders.len() {
            for b in a + 1..orders.len() {
                relators.push(Word::commutator(&Word::generator(a), &Word::generator(b)));
            }
        }
        Self {
            presentation: Presentation::new(labels, relators).expect("cyclic product presentation"),
            reducer: Reducer::Cyclic(orders.to_vec()),
        }
    }

    pub fn reduce(&self, w: &Word) -> Result<Word> {
        match &self.reducer {
            Reducer::Cyclic(orders) => {
                let sums = w.exponent_sums(orders.len());
                Ok(sums
                    .iter()
                    .zip(orders)
                    .enumerate()
                    .flat_map(|(g, (&e, &k))| {
                        let e = if k == 0 { e } else { e.rem_euclid(k as i64) };
                        Word::power(g, e).into_letters()
                    })
                    .collect())
            }
            Reducer::FreeProduct => free_product_normal_form(&self.presentation, w),
            Reducer::Free => Ok(w.free_reduce()),
        }
    }

    pub fn order(&self) -> Option<u64> {
        match &self.reducer {
            Reducer::Cyclic(orders) if orders.iter().all(|&k| k > 0) => {
                Some(orders.iter().product())
            }
            _ => None,
        }
    }

    /// All elements in normal form, for finite cyclic products.
    pub fn elements(&self) -> Option<Vec<Word>> {
        let Reducer::Cyclic(orders) = &self.reducer else {
            return None;
        };
        let mut out = vec![Word::identity()];
        for (g, &k) in orders.iter().enumerate() {
            if k == 0 {
                return None;
            }
            out = out
                .iter()
                .flat_map(|w| (0..k as i64).map(move |e| w.concat(&Word::power(g, e))))
                .collect();
        }
        Some(out)
    }

    fn random_element<R: Rng>(&self, rng: &mut R) -> Result<Word> {
        let n = self.presentation.generator_count();
        if n == 0 {
            return Ok(Word::identity());
        }
        let len = rng.gen_range(0..6);
        let w: Word = (0..len)
            .flat_map(|_| {
                Word::power(rng.gen_range(0..n), if rng.gen() { 1 } else { -1 }).into_letters()
            })
            .collect();
        self.reduce(&w)
    }
}

/// Internal groups per prime plus the species partition: enough to multiply
/// particle-group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParticleStructure {
    pub groups: Vec<InternalGroup>,
    pub species: Vec<Vec<usize>>,
}

/// `(γ; σ)` with `γ` one word per prime and `σ` one permutation per species,
/// acting on positions within the species.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParticleGroupElement {
    pub internal: Vec<Word>,
    pub external: Vec<Permutation>,
}

impl ParticleStructure {
    pub fn new(groups: Vec<InternalGroup>, species: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; groups.len()];
        for class in &species {
            for &i in class {
                if i >= groups.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Validation(format!(
                        "species {species:?} is not a partition"
                    )));
                }
            }
            if class.iter().any(|&i| groups[i] != groups[class[0]]) {
                return Err(Error::Validation(
                    "primes of one species need the same internal group".into(),
                ));
            }
        }
        if seen.contains(&false) {
            return Err(Error::Validation(format!(
                "species {species:?} miss a prime"
            )));
        }
        Ok(Self { groups, species })
    }

    /// Irreducible primes contribute their cataloged mapping class group,
    /// handles the ℤ₂ generated by their spin.
    pub fn for_sum(s: &ConnectedSum) -> Result<Self> {
        let groups = s
            .primes()
            .iter()
            .map(|pr| match pr {
                Prime::Handle => Ok(InternalGroup::cyclic_product(&[2])),
                Prime::Lens { .. } => Ok(match internal_mcg(pr)? {
                    Some(m) => {
                        InternalGroup::cyclic_product(m.cyclic_orders.as_deref().unwrap_or(&[]))
                    }
                    None => InternalGroup::cyclic_product(&[]),
                }),
                Prime::Generic(g) if g.mcg.is_some() => {
                    let presentation = g.mcg.clone().unwrap();
                    let cyclic_factors = presentation.factors().is_some()
                        && free_product_normal_form(&presentation, &Word::identity()).is_ok();
                    Ok(InternalGroup {
                        presentation,
                        reducer: if cyclic_factors {
                            Reducer::FreeProduct
                        } else {
                            Reducer::Free
                        },
                    })
                }
                other => Err(Error::NotCataloged(format!(
                    "mapping class group of {other}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(groups, s.species())
    }

    pub fn identity(&self) -> ParticleGroupElement {
        ParticleGroupElement {
            internal: vec![Word::identity(); self.groups.len()],
            external: self
                .species
                .iter()
                .map(|c| Permutation::identity(c.len()))
                .collect(),
        }
    }

    fn check(&self, x: &ParticleGroupElement) -> Result<()> {
        let ok = x.internal.len() == self.groups.len()
            && x.external.len() == self.species.len()
            && x.external
                .iter()
                .zip(&self.species)
                .all(|(s, c)| s.degree() == c.len());
        if ok {
            Ok(())
        } else {
            Err(Error::MismatchedStructure(
                "element does not match the species layout".into(),
            ))
        }
    }

    /// `θ(σ)(γ)`: within each species, slot `t` receives the entry of slot `σ(t)`.
    fn permute(&self, external: &[Permutation], internal: &[Word]) -> Vec<Word> {
        let mut out = internal.to_vec();
        for (class, sigma) in self.species.iter().zip(external) {
            for (t, &i) in class.iter().enumerate() {
                out[i] = internal[class[sigma.apply(t)]].clone();
            }
        }
        out
    }

    /// `(γ'; σ')(γ; σ) = (γ' θ(σ')(γ); σ'σ)`, where `σ'σ` applies `σ'` first so
    /// that `θ` is a homomorphism.
    pub fn multiply(
        &self,
        x: &ParticleGroupElement,
        y: &ParticleGroupElement,
    ) -> Result<ParticleGroupElement> {
        self.check(x)?;
        self.check(y)?;
        let moved = self.permute(&x.external, &y.internal);
        let internal = x
            .internal
            .iter()
            .zip(&moved)
            .zip(&self.groups)
            .map(|((a, b), g)| g.reduce(&a.concat(b)))
            .collect::<Result<Vec<_>>>()?;
        let external = x
            .external
            .iter()
            .zip(&y.external)
            .map(|(a, b)| a.then(b))
            .collect();
        Ok(ParticleGroupElement { internal, external })
    }

    pub fn inverse(&self, x: &ParticleGroupElement) -> Result<ParticleGroupElement> {
        self.check(x)?;
        let external: Vec<Permutation> = x.external.iter().map(Permutation::inverse).collect();
        let inverted: Vec<Word> = x.internal.iter().map(Word::inverse).collect();
        let internal = self
            .permute(&external, &inverted)
            .iter()
            .zip(&self.groups)
            .map(|(w, g)| g.reduce(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(ParticleGroupElement { internal, external })
    }

    pub fn normalize(&self, x: &ParticleGroupElement) -> Result<ParticleGroupElement> {
        self.check(x)?;
        Ok(ParticleGroupElement {
            internal: x
                .internal
                .iter()
                .zip(&self.groups)
                .map(|(w, g)| g.reduce(w))
                .collect::<Result<Vec<_>>>()?,
            external: x.external.clone(),
        })
    }

    pub fn order(&self) -> Option<u64> {
        let mut total = 1u64;
        for class in &self.species {
            let g = self.groups[class[0]].order()?;
            let n = class.len() as u32;
            total = total
                .checked_mul(g.checked_pow(n)?)?
                .checked_mul((1..=n as u64).product())?;
        }
        Some(total)
    }

    /// Every element, when all internal groups are finite cyclic products.
    pub fn elements(&self) -> Option<Vec<ParticleGroupElement>> {
        let mut internals: Vec<Vec<Word>> = vec![Vec::new()];
        for g in &self.groups {
            let els = g.elements()?;
            internals = internals
                .iter()
                .flat_map(|prefix| {
                    els.iter().map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e.clone());
                        v
                    })
                })
                .collect();
        }
        let mut externals: Vec<Vec<Permutation>> = vec![Vec::new()];
        for class in &self.species {
            let perms = crate::perm::symmetric_group_elements(class.len());
            externals = externals
                .iter()
                .flat_map(|prefix| {
                    perms.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.push(p.clone());
                        v
                    })
                })
                .collect();
        }
        Some(
            internals
                .iter()
                .flat_map(|i| {
                    externals.iter().map(move |e| ParticleGroupElement {
                        internal: i.clone(),
                        external: e.clone(),
                    })
                })
                .collect(),
        )
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Result<ParticleGroupElement> {
        let internal = self
            .groups
            .iter()
            .map(|g| g.random_element(rng))
            .collect::<Result<Vec<_>>>()?;
        let external = self
            .species
            .iter()
            .map(|c| {
                let mut images: Vec<usize> = (0..c.len()).collect();
                images.shuffle(rng);
                Permutation::from_images(images).expect("shuffle is a bijection")
            })
            .collect();
        Ok(ParticleGroupElement { internal, external })
    }
}

/// Multiplies two elements of the particle group of `s`.
pub fn particle_group_multiply(
    s: &ConnectedSum,
    x: &ParticleGroupElement,
    y: &ParticleGroupElement,
) -> Result<ParticleGroupElement> {
    ParticleStructure::for_sum(s)?.multiply(x, y)
}
