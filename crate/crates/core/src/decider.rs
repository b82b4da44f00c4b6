//! Word problem for finitely presented, residually finite groups.
//!
//! Two semi-decision procedures run in alternation:
//!
//! * the *consequence search* looks for a sequence of relator insertions that
//!   turns the word into the empty word, which proves it trivial;
//! * the *quotient search* looks for a homomorphism into a symmetric group
//!   under which the word survives, which proves it nontrivial.
//!
//! In a residually finite group exactly one of them eventually succeeds. Each
//! round runs one symmetric-group degree of the quotient search and then one
//! breadth-first layer of the consequence search. Both searches are
//! deterministic, so the verdict and its certificate depend only on the
//! presentation, the word and the budget.
//!
//! The consequence search only inserts a relator copy where its first letter
//! cancels the letter to its left or its last letter cancels the letter to its
//! right. This does not change which words are found at a given depth: a
//! derivation of length `d` yields a van Kampen diagram of area at most `d`,
//! and in a diagram with reduced, nonempty boundary some 2-cell shares an edge
//! with the boundary. Peeling that cell is exactly such a cancelling insertion
//! and leaves a diagram of one less area for the reduced remainder.

use std::ops::ControlFlow;
use std::sync::OnceLock;

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;
use serde::{Deserialize, Serialize};

use crate::homs::{evaluate_with, search_assignments, GroupHomomorphism};
use crate::perm::{symmetric_group_elements, Permutation};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Largest symmetric-group degree whose homomorphism list is cached.
const CACHE_DEGREE_LIMIT: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    /// Number of breadth-first insertion layers.
    pub max_t1_depth: usize,
    /// Largest symmetric-group degree searched for quotients.
    pub max_t2_degree: usize,
    /// Global cap on generated words plus inspected homomorphisms.
    pub max_steps: u64,
}

impl Budget {
    pub fn new(max_t1_depth: usize, max_t2_degree: usize) -> Self {
        Self {
            max_t1_depth,
            max_t2_degree,
            ..Self::default()
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_t1_depth: 8,
            max_t2_degree: 5,
            max_steps: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BudgetUsed {
    pub t1_depth: usize,
    pub t2_degree: usize,
    pub steps: u64,
}

/// Insertion of a cyclic conjugate of a relator (or of its inverse).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InsertionStep {
    pub relator: usize,
    pub inverted: bool,
    /// The inserted word is the relator rotated left by this many letters.
    pub rotation: usize,
    pub position: usize,
    /// Freely reduced word after the insertion.
    pub result: Word,
}

impl InsertionStep {
    pub fn inserted_word(&self, p: &Presentation) -> Word {
        conjugate_word(&p.relators()[self.relator], self.inverted, self.rotation)
    }
}

fn conjugate_word(relator: &Word, inverted: bool, rotation: usize) -> Word {
    let base = if inverted {
        relator.inverse()
    } else {
        relator.clone()
    };
    let letters = base.letters();
    if letters.is_empty() {
        return base;
    }
    let k = rotation % letters.len();
    letters[k..].iter().chain(&letters[..k]).copied().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub start: Word,
    pub steps: Vec<InsertionStep>,
}

impl Derivation {
    /// Re-applies every insertion and returns the final word, or `None` if a
    /// recorded intermediate result does not match.
    pub fn replay(&self, p: &Presentation) -> Option<Word> {
        let mut current = self.start.free_reduce();
        for step in &self.steps {
            if step.relator >= p.relators().len() || step.position > current.len() {
                return None;
            }
            current = current.insert_reduced(step.position, &step.inserted_word(p));
            if current != step.result {
                return None;
            }
        }
        Some(current)
    }

    pub fn proves_trivial(&self, p: &Presentation) -> bool {
        self.replay(p).is_some_and(|w| w.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Trivial {
        derivation: Derivation,
    },
    Nontrivial {
        witness: GroupHomomorphism,
        image: Permutation,
    },
    Exhausted {
        budget_used: BudgetUsed,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Trivial { .. } => "trivial",
            Verdict::Nontrivial { .. } => "nontrivial",
            Verdict::Exhausted { .. } => "exhausted",
        }
    }

    /// Independently re-checks the certificate against `p` and `w`.
    pub fn verify(&self, p: &Presentation, w: &Word) -> bool {
        match self {
            Verdict::Trivial { derivation } => {
                derivation.start == w.free_reduce() && derivation.proves_trivial(p)
            }
            Verdict::Nontrivial { witness, image } => {
                witness.respects_relators(p).unwrap_or(false)
                    && evaluate_with(w, &witness.assignment, witness.degree)
                        .is_ok_and(|x| x == *image)
                    && !image.is_identity()
            }
            Verdict::Exhausted { .. } => true,
        }
    }

    pub fn to_json_value(&self, p: &Presentation) -> serde_json::Value {
        match self {
            Verdict::Trivial { derivation } => serde_json::json!({
                "verdict": "trivial",
                "derivation": derivation.steps.iter().map(|s| serde_json::json!({
                    "relator": s.relator,
                    "inverted": s.inverted,
                    "rotation": s.rotation,
                    "position": s.position,
                    "inserted": p.format_word(&s.inserted_word(p)),
                    "result": p.format_word(&s.result),
                })).collect::<Vec<_>>(),
            }),
            Verdict::Nontrivial { witness, image } => serde_json::json!({
                "verdict": "nontrivial",
                "witness": witness.to_json_value(p),
                "image": image.to_string(),
            }),
            Verdict::Exhausted { budget_used } => serde_json::json!({
                "verdict": "exhausted",
                "budget_used": budget_used,
            }),
        }
    }
}

type Code = u16;

#[inline]
fn encode(l: Letter) -> Code {
    (l.generator as Code) << 1 | l.inverse as Code
}

#[inline]
fn decode(c: Code) -> Letter {
    Letter::new((c >> 1) as usize, c & 1 == 1)
}

fn encode_word(w: &Word) -> Box<[Code]> {
    w.letters().iter().map(|&l| encode(l)).collect()
}

fn decode_word(w: &[Code]) -> Word {
    w.iter().map(|&c| decode(c)).collect()
}

/// `prefix · ins · suffix`, freely reduced.
fn insert_reduced(word: &[Code], position: usize, ins: &[Code]) -> Box<[Code]> {
    let mut out: Vec<Code> = Vec::with_capacity(word.len() + ins.len());
    for &c in word[..position].iter().chain(ins).chain(&word[position..]) {
        if out.last() == Some(&(c ^ 1)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out.into_boxed_slice()
}

#[derive(Debug, Clone)]
struct Insertable {
    relator: usize,
    inverted: bool,
    rotation: usize,
    word: Box<[Code]>,
}

/// A homomorphism into a small symmetric group with every letter's image
/// (generators and inverses) laid out for fast word evaluation.
#[derive(Debug, Clone)]
struct CompiledHom {
    degree: usize,
    images: Vec<[u8; COMPILED_MAX_DEGREE]>,
}

const COMPILED_MAX_DEGREE: usize = 16;

impl CompiledHom {
    fn new(assignment: &[Permutation], degree: usize) -> Self {
        let mut images = Vec::with_capacity(2 * assignment.len());
        for p in assignment {
            let mut fwd = [0u8; COMPILED_MAX_DEGREE];
            let mut inv = [0u8; COMPILED_MAX_DEGREE];
            for (i, &j) in p.images().iter().enumerate() {
                fwd[i] = j as u8;
                inv[j] = i as u8;
            }
            images.push(fwd);
            images.push(inv);
        }
        Self { degree, images }
    }

    fn kills(&self, w: &[Code]) -> bool {
        let mut acc = [0u8; COMPILED_MAX_DEGREE];
        for (i, a) in acc.iter_mut().enumerate().take(self.degree) {
            *a = i as u8;
        }
        for &c in w {
            let img = &self.images[c as usize];
            for a in acc.iter_mut().take(self.degree) {
                *a = img[*a as usize];
            }
        }
        acc.iter()
            .take(self.degree)
            .enumerate()
            .all(|(i, &a)| a as usize == i)
    }
}

type CompiledHoms = Vec<(Vec<Permutation>, CompiledHom)>;

/// Decision procedure bound to one presentation. Homomorphism lists into
/// small symmetric groups are cached across calls.
#[derive(Debug)]
pub struct WordDecider<'p> {
    presentation: &'p Presentation,
    insertables: Vec<Insertable>,
    // letter code -> insertables starting / ending with that letter
    by_first: Vec<Vec<usize>>,
    by_last: Vec<Vec<usize>>,
    hom_cache: Vec<OnceLock<CompiledHoms>>,
}

enum Search<T> {
    Found(T),
    NotFound,
    OutOfSteps,
}

impl<'p> WordDecider<'p> {
    pub fn new(presentation: &'p Presentation) -> Self {
        assert!(
            presentation.generator_count() < (1 << 15),
            "presentation has too many generators"
        );
        let mut insertables: Vec<Insertable> = Vec::new();
        for (ri, r) in presentation.relators().iter().enumerate() {
            for inverted in [false, true] {
                for rotation in 0..r.len() {
                    let word = conjugate_word(r, inverted, rotation);
                    let word = encode_word(&word);
                    if insert_reduced(&word, 0, &[]).is_empty()
                        || insertables.iter().any(|x| x.word == word)
                    {
                        continue;
                    }
                    insertables.push(Insertable {
                        relator: ri,
                        inverted,
                        rotation,
                        word,
                    });
                }
            }
        }
        let codes = 2 * presentation.generator_count();
        let mut by_first = vec![Vec::new(); codes];
        let mut by_last = vec![Vec::new(); codes];
        for (i, ins) in insertables.iter().enumerate() {
            by_first[ins.word[0] as usize].push(i);
            by_last[ins.word[ins.word.len() - 1] as usize].push(i);
        }
        Self {
            presentation,
            insertables,
            by_first,
            by_last,
            hom_cache: (0..=CACHE_DEGREE_LIMIT).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.presentation
    }

    /// Runs both searches in alternation until one succeeds or the budget runs out.
    pub fn decide(&self, w: &Word, budget: Budget) -> Verdict {
        let w = w.free_reduce();
        if w.is_empty() {
            return Verdict::Trivial {
                derivation: Derivation {
                    start: w,
                    steps: Vec::new(),
                },
            };
        }
        let code = encode_word(&w);
        let mut used = BudgetUsed::default();
        let mut t1 = ConsequenceSearch::new(code.clone());
        let mut next_degree = 2;
        loop {
            let t2_open = next_degree <= budget.max_t2_degree;
            let t1_open = !t1.finished && t1.depth < budget.max_t1_depth;
            if !t2_open && !t1_open {
                return Verdict::Exhausted { budget_used: used };
            }
            if t2_open {
                used.t2_degree = next_degree;
                match self.quotient_search_degree(
                    &w,
                    &code,
                    next_degree,
                    &mut used.steps,
                    budget.max_steps,
                ) {
                    Search::Found((witness, image)) => {
                        return Verdict::Nontrivial { witness, image }
                    }
                    Search::OutOfSteps => return Verdict::Exhausted { budget_used: used },
                    Search::NotFound => next_degree += 1,
                }
            }
            if t1_open {
                match t1.expand_layer(self, &mut used.steps, budget.max_steps) {
                    Search::Found(derivation) => return Verdict::Trivial { derivation },
                    Search::OutOfSteps => return Verdict::Exhausted { budget_used: used },
                    Search::NotFound => used.t1_depth = t1.depth,
                }
            }
        }
    }

    /// Breadth-first relator-insertion search to `depth` layers.
    pub fn consequence_search(&self, w: &Word, depth: usize) -> Option<Derivation> {
        let w = w.free_reduce();
        if w.is_empty() {
            return Some(Derivation {
                start: w,
                steps: Vec::new(),
            });
        }
        let mut search = ConsequenceSearch::new(encode_word(&w));
        let mut steps = 0;
        while !search.finished && search.depth < depth {
            if let Search::Found(d) = search.expand_layer(self, &mut steps, u64::MAX) {
                return Some(d);
            }
        }
        None
    }

    /// Homomorphisms into `S_2, …, S_max_degree`, first one under which `w` survives.
    pub fn quotient_search(
        &self,
        w: &Word,
        max_degree: usize,
    ) -> Option<(GroupHomomorphism, Permutation)> {
        let mut steps = 0;
        let code = encode_word(w);
        (2..=max_degree).find_map(|d| {
            match self.quotient_search_degree(w, &code, d, &mut steps, u64::MAX) {
                Search::Found(x) => Some(x),
                _ => None,
            }
        })
    }

    fn quotient_search_degree(
        &self,
        w: &Word,
        code: &[Code],
        degree: usize,
        steps: &mut u64,
        max_steps: u64,
    ) -> Search<(GroupHomomorphism, Permutation)> {
        let certificate = |images: &[Permutation]| {
            let image =
                evaluate_with(w, images, degree).expect("assignment covers the presentation");
            let witness = GroupHomomorphism {
                target: format!("S{degree}"),
                degree,
                assignment: images.to_vec(),
            };
            (witness, image)
        };
        if let Some(cached) = self.hom_cache.get(degree).and_then(OnceLock::get) {
            for (images, compiled) in cached {
                if *steps >= max_steps {
                    return Search::OutOfSteps;
                }
                *steps += 1;
                if !compiled.kills(code) {
                    return Search::Found(certificate(images));
                }
            }
            return Search::NotFound;
        }
        let cacheable = degree <= CACHE_DEGREE_LIMIT;
        let elements = symmetric_group_elements(degree);
        let mut all = Vec::new();
        let outcome = search_assignments(self.presentation, &elements, |images| {
            if *steps >= max_steps {
                return ControlFlow::Break(Search::OutOfSteps);
            }
            *steps += 1;
            let survives = if degree <= COMPILED_MAX_DEGREE {
                let compiled = CompiledHom::new(images, degree);
                let survives = !compiled.kills(code);
                if cacheable {
                    all.push((images.to_vec(), compiled));
                }
                survives
            } else {
                !evaluate_with(w, images, degree)
                    .expect("assignment covers the presentation")
                    .is_identity()
            };
            if survives {
                ControlFlow::Break(Search::Found(certificate(images)))
            } else {
                ControlFlow::Continue(())
            }
        });
        match outcome {
            Some(result) => result,
            None => {
                if cacheable {
                    let _ = self.hom_cache[degree].set(all);
                }
                Search::NotFound
            }
        }
    }
}

struct Node {
    parent: u32,
    ins: u32,
    position: u32,
}

const ROOT: u32 = u32::MAX;

/// Breadth-first state. `words` doubles as the seen set; a word's index is
/// its node id.
struct ConsequenceSearch {
    words: IndexSet<Box<[Code]>, FxBuildHasher>,
    nodes: Vec<Node>,
    frontier: Vec<u32>,
    depth: usize,
    finished: bool,
}

impl ConsequenceSearch {
    fn new(start: Box<[Code]>) -> Self {
        let mut words = IndexSet::with_hasher(FxBuildHasher);
        words.insert(start);
        Self {
            words,
            nodes: vec![Node {
                parent: ROOT,
                ins: 0,
                position: 0,
            }],
            frontier: vec![0],
            depth: 0,
            finished: false,
        }
    }

    fn expand_layer(
        &mut self,
        d: &WordDecider<'_>,
        steps: &mut u64,
        max_steps: u64,
    ) -> Search<Derivation> {
        let frontier = std::mem::take(&mut self.frontier);
        let mut next = Vec::new();
        let mut candidates: Vec<usize> = Vec::new();
        for &idx in &frontier {
            let word = self.words[idx as usize].clone();
            let len = word.len();
            for position in 0..=len {
                candidates.clear();
                if position > 0 {
                    candidates.extend(&d.by_first[(word[position - 1] ^ 1) as usize]);
                }
                if position < len {
                    candidates.extend(&d.by_last[(word[position] ^ 1) as usize]);
                }
                candidates.sort_unstable();
                candidates.dedup();
                for &ci in &candidates {
                    if *steps >= max_steps {
                        return Search::OutOfSteps;
                    }
                    *steps += 1;
                    let child = insert_reduced(&word, position, &d.insertables[ci].word);
                    let empty = child.is_empty();
                    let (id, fresh) = self.words.insert_full(child);
                    if !fresh {
                        continue;
                    }
                    self.nodes.push(Node {
                        parent: idx,
                        ins: ci as u32,
                        position: position as u32,
                    });
                    let id = id as u32;
                    if empty {
                        self.depth += 1;
                        return Search::Found(self.derivation(d, id));
                    }
                    next.push(id);
                }
            }
        }
        self.depth += 1;
        self.finished = next.is_empty();
        self.frontier = next;
        Search::NotFound
    }

    fn derivation(&self, d: &WordDecider<'_>, mut id: u32) -> Derivation {
        let mut steps = Vec::new();
        while self.nodes[id as usize].parent != ROOT {
            let node = &self.nodes[id as usize];
            let ins = &d.insertables[node.ins as usize];
            steps.push(InsertionStep {
                relator: ins.relator,
                inverted: ins.inverted,
                rotation: ins.rotation,
                position: node.position as usize,
                result: decode_word(&self.words[id as usize]),
            });
            id = node.parent;
        }
        steps.reverse();
        Derivation {
            start: decode_word(&self.words[0]),
            steps,
        }
    }
}

/// Breadth-first search for a derivation of the empty word within `depth` insertions.
pub fn t1_trivial_search(p: &Presentation, w: &Word, depth: usize) -> Option<Derivation> {
    WordDecider::new(p).consequence_search(w, depth)
}

/// First homomorphism into `S_2, …, S_max_degree` under which `w` is not the identity.
pub fn t2_nontrivial_search(
    p: &Presentation,
    w: &Word,
    max_degree: usize,
) -> Option<(GroupHomomorphism, Permutation)> {
    WordDecider::new(p).quotient_search(w, max_degree)
}

pub fn decide(p: &Presentation, w: &Word, budget: Budget) -> Verdict {
    WordDecider::new(p).decide(w, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::free_product_normal_form;

    fn z2z2() -> Presentation {
        Presentation::new(["a", "b"], vec![Word::power(0, 2), Word::power(1, 2)])
            .unwrap()
            .with_factors(vec![vec![0], vec![1]])
            .unwrap()
    }

    fn w(p: &Presentation, s: &str) -> Word {
        p.parse_word(s).unwrap()
    }

    #[test]
    fn t1_relator_itself() {
        let p = z2z2();
        let d = t1_trivial_search(&p, &w(&p, "a a"), 1).unwrap();
        assert_eq!(d.steps.len(), 1);
        assert!(d.proves_trivial(&p));
        assert_eq!(d.steps[0].inserted_word(&p), w(&p, "a^-1 a^-1"));
    }

    #[test]
    fn t1_two_insertions() {
        let p = z2z2();
        let word = w(&p, "b a a b");
        assert!(t1_trivial_search(&p, &word, 1).is_none());
        let d = t1_trivial_search(&p, &word, 2).unwrap();
        assert_eq!(d.steps.len(), 2);
        assert!(d.proves_trivial(&p));
    }

    #[test]
    fn t1_never_proves_nontrivial_word() {
        let p = z2z2();
        assert!(t1_trivial_search(&p, &w(&p, "a b"), 6).is_none());
    }

    #[test]
    fn t2_examples() {
        let p = z2z2();
        let (h, image) = t2_nontrivial_search(&p, &w(&p, "a"), 5).unwrap();
        assert_eq!(h.degree, 2);
        assert_eq!(h.assignment[0].to_string(), "(0 1)");
        assert!(h.assignment[1].is_identity());
        assert_eq!(image.to_string(), "(0 1)");

        let (h, image) = t2_nontrivial_search(&p, &w(&p, "a b a b"), 5).unwrap();
        assert_eq!(h.degree, 3);
        assert_eq!(image.order(), 3);
        assert!(h.respects_relators(&p).unwrap());

        assert!(t2_nontrivial_search(&p, &w(&p, "a a"), 5).is_none());
    }

    #[test]
    fn t2_first_witness_for_ab_is_in_s2() {
        let p = z2z2();
        let (h, image) = t2_nontrivial_search(&p, &w(&p, "a b"), 5).unwrap();
        assert_eq!(h.degree, 2);
        assert!(!image.is_identity());
    }

    #[test]
    fn decide_examples() {
        let p = z2z2();
        let v = decide(&p, &w(&p, "a b a b"), Budget::default());
        assert!(matches!(&v, Verdict::Nontrivial { witness, .. } if witness.degree == 3));
        assert!(v.verify(&p, &w(&p, "a b a b")));

        let free = Presentation::free(["a", "b"]);
        let comm = w(&free, "a b a^-1 b^-1");
        let v = decide(&free, &comm, Budget::default());
        assert!(matches!(v, Verdict::Nontrivial { .. }));
        assert!(v.verify(&free, &comm));

        let v = decide(&p, &Word::identity(), Budget::default());
        assert!(matches!(&v, Verdict::Trivial { derivation } if derivation.steps.is_empty()));
    }

    #[test]
    fn decide_trivial_certificate() {
        let p = z2z2();
        let word = w(&p, "a b^-1 a a b a");
        let v = decide(&p, &word, Budget::default());
        assert!(matches!(v, Verdict::Trivial { .. }));
        assert!(v.verify(&p, &word));
    }

    #[test]
    fn exhausted_when_budget_is_zero() {
        let p = z2z2();
        let v = decide(&p, &w(&p, "a b"), Budget::new(0, 1));
        assert!(matches!(v, Verdict::Exhausted { .. }));
        let tight = Budget {
            max_steps: 3,
            ..Budget::default()
        };
        assert!(matches!(
            decide(&p, &w(&p, "a b a b"), tight),
            Verdict::Exhausted { .. }
        ));
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let p = z2z2();
        let word = w(&p, "b a a b");
        let Verdict::Trivial { mut derivation } = decide(&p, &word, Budget::default()) else {
            panic!("expected trivial");
        };
        derivation.steps.pop();
        assert!(!derivation.proves_trivial(&p));
        let v = decide(&p, &w(&p, "a b a b"), Budget::default());
        assert!(!v.verify(&p, &w(&p, "a a")));
    }

    #[test]
    fn baumslag_solitar_stress_input_stays_sound() {
        // ⟨a,b | a⁻¹b²a = b³⟩ is not residually finite; only soundness is claimed.
        let p = Presentation::from_json(
            r#"{"generators":["a","b"],"relators":[["a^-1","b","b","a","b^-1","b^-1","b^-1"]]}"#,
        )
        .unwrap();
        let word = w(&p, "a^-1 b a b a^-1 b^-1 a b^-1 a^-1");
        let v = decide(
            &p,
            &word,
            Budget {
                max_t1_depth: 2,
                max_t2_degree: 4,
                max_steps: 200_000,
            },
        );
        assert!(v.verify(&p, &word));
    }

    #[test]
    fn agrees_with_normal_form_on_short_words() {
        let p = z2z2();
        let decider = WordDecider::new(&p);
        let letters = ["a", "a^-1", "b", "b^-1"];
        let mut words = vec![String::new()];
        for _ in 0..6 {
            let mut next = Vec::new();
            for s in &words {
                for l in letters {
                    next.push(format!("{s} {l}"));
                }
            }
            words.extend(next.clone());
            words = words
                .into_iter()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            if words.len() > 6000 {
                break;
            }
        }
        for s in words {
            let word = w(&p, &s);
            if !word.is_freely_reduced() {
                continue;
            }
            let trivial = free_product_normal_form(&p, &word).unwrap().is_empty();
            let v = decider.decide(&word, Budget::default());
            assert!(v.verify(&p, &word), "{s}");
            match v {
                Verdict::Trivial { .. } => assert!(trivial, "{s}"),
                Verdict::Nontrivial { .. } => assert!(!trivial, "{s}"),
                Verdict::Exhausted { .. } => panic!("exhausted on {s}"),
            }
        }
    }
}
