//! Homomorphisms from finitely presented groups into permutation groups.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{symmetric_group_elements, Permutation};
use crate::presentation::Presentation;
use crate::word::Word;

/// Largest symmetric-group degree searched exhaustively unless raised.
pub const DEFAULT_HOM_DEGREE_LIMIT: usize = 7;

/// An assignment of permutations to the generators of a presentation under
/// which every relator evaluates to the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupHomomorphism {
    pub target: String,
    pub degree: usize,
    pub assignment: Vec<Permutation>,
}

impl GroupHomomorphism {
    /// Checks that `assignment` covers `p` and kills every relator.
    pub fn new(
        p: &Presentation,
        target: impl Into<String>,
        degree: usize,
        assignment: Vec<Permutation>,
    ) -> Result<Self> {
        if assignment.len() != p.generator_count() {
            return Err(Error::Validation(format!(
                "assignment has {} images for {} generators",
                assignment.len(),
                p.generator_count()
            )));
        }
        if assignment.iter().any(|a| a.degree() != degree) {
            return Err(Error::Validation("assignment degree mismatch".into()));
        }
        let h = Self {
            target: target.into(),
            degree,
            assignment,
        };
        if !h.respects_relators(p)? {
            return Err(Error::Validation(
                "assignment does not satisfy the relators".into(),
            ));
        }
        Ok(h)
    }

    pub fn respects_relators(&self, p: &Presentation) -> Result<bool> {
        for r in p.relators() {
            if !evaluate_word(r, self)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json_value(&self, p: &Presentation) -> serde_json::Value {
        let images: serde_json::Map<String, serde_json::Value> = p
            .labels()
            .into_iter()
            .zip(&self.assignment)
            .map(|(l, a)| (l, serde_json::Value::String(a.to_string())))
            .collect();
        serde_json::json!({
            "target": self.target,
            "degree": self.degree,
            "images": images,
        })
    }
}

/// Image of `w`, multiplying left to right.
pub fn evaluate_word(w: &Word, h: &GroupHomomorphism) -> Result<Permutation> {
    evaluate_with(w, &h.assignment, h.degree)
}

pub(crate) fn evaluate_with(
    w: &Word,
    images: &[Permutation],
    degree: usize,
) -> Result<Permutation> {
    let mut acc = Permutation::identity(degree);
    for l in w.letters() {
        let img = images.get(l.generator).ok_or_else(|| {
            Error::UnknownGenerator(format!("generator {} has no image", l.generator))
        })?;
        if l.inverse {
            acc.then_in_place(&img.inverse());
        } else {
            acc.then_in_place(img);
        }
    }
    Ok(acc)
}

/// Depth-first search over assignments of `candidates` to generators in
/// order, pruning as soon as a relator whose generators are all assigned
/// fails. `visit` sees each complete assignment in lexicographic order of
/// candidate indices and may stop the search.
pub fn search_assignments<B>(
    p: &Presentation,
    candidates: &[Permutation],
    mut visit: impl FnMut(&[Permutation]) -> ControlFlow<B>,
) -> Option<B> {
    let n = p.generator_count();
    let degree = candidates.first().map_or(0, Permutation::degree);
    let mut by_last: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in p.relators() {
        if let Some(m) = r.max_generator() {
            by_last[m].push(r);
        }
    }
    let inverses: Vec<Permutation> = candidates.iter().map(Permutation::inverse).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut images: Vec<Permutation> = Vec::with_capacity(n);

    fn relator_holds(
        r: &Word,
        chosen: &[usize],
        candidates: &[Permutation],
        inverses: &[Permutation],
        degree: usize,
    ) -> bool {
        let mut acc = Permutation::identity(degree);
        for l in r.letters() {
            let c = chosen[l.generator];
            acc.then_in_place(if l.inverse {
                &inverses[c]
            } else {
                &candidates[c]
            });
        }
        acc.is_identity()
    }

    #[allow(clippy::too_many_arguments)]
    fn rec<B>(
        g: usize,
        n: usize,
        degree: usize,
        candidates: &[Permutation],
        inverses: &[Permutation],
        by_last: &[Vec<&Word>],
        chosen: &mut Vec<usize>,
        images: &mut Vec<Permutation>,
        visit: &mut dyn FnMut(&[Permutation]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if g == n {
            return visit(images);
        }
        for c in 0..candidates.len() {
            chosen.push(c);
            if by_last[g]
                .iter()
                .all(|r| relator_holds(r, chosen, candidates, inverses, degree))
            {
                images.push(candidates[c].clone());
                let flow = rec(
                    g + 1,
                    n,
                    degree,
                    candidates,
                    inverses,
                    by_last,
                    chosen,
                    images,
                    visit,
                );
                images.pop();
                if flow.is_break() {
                    chosen.pop();
                    return flow;
                }
            }
            chosen.pop();
        }
        ControlFlow::Continue(())
    }

    match rec(
        0,
        n,
        degree,
        candidates,
        &inverses,
        &by_last,
        &mut chosen,
        &mut images,
        &mut visit,
    ) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

/// Every homomorphism from `p` into `S_degree`, in deterministic order.
pub fn enumerate_homomorphisms(p: &Presentation, degree: usize) -> Result<Vec<GroupHomomorphism>> {
    enumerate_homomorphisms_with_limit(p, degree, DEFAULT_HOM_DEGREE_LIMIT)
}

pub fn enumerate_homomorphisms_with_limit(
    p: &Presentation,
    degree: usize,
    limit: usize,
) -> Result<Vec<GroupHomomorphism>> {
    if degree > limit {
        return Err(Error::DegreeTooLarge { degree, limit });
    }
    let elements = symmetric_group_elements(degree);
    Ok(enumerate_homomorphisms_into(
        p,
        &elements,
        &format!("S{degree}"),
    ))
}

/// Every homomorphism from `p` into the group whose full element list is `elements`.
pub fn enumerate_homomorphisms_into(
    p: &Presentation,
    elements: &[Permutation],
    target: &str,
) -> Vec<GroupHomomorphism> {
    let degree = elements.first().map_or(0, Permutation::degree);
    let mut out = Vec::new();
    search_assignments::<()>(p, elements, |images| {
        out.push(GroupHomomorphism {
            target: target.to_string(),
            degree,
            assignment: images.to_vec(),
        });
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2z2() -> Presentation {
        Presentation::new(["a", "b"], vec![Word::power(0, 2), Word::power(1, 2)]).unwrap()
    }

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    /// Raw brute force: every tuple of `S_n` elements, checked afterwards.
    fn brute_force_count(p: &Presentation, n: usize) -> usize {
        let els = symmetric_group_elements(n);
        let k = p.generator_count();
        let total = els.len().pow(k as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let images: Vec<Permutation> = (0..k)
                    .map(|_| {
                        let e = els[c % els.len()].clone();
                        c /= els.len();
                        e
                    })
                    .collect();
                p.relators()
                    .iter()
                    .all(|r| evaluate_with(r, &images, n).unwrap().is_identity())
            })
            .count()
    }

    #[test]
    fn evaluate_examples() {
        let p = Presentation::free(["a", "b"]);
        let h = GroupHomomorphism::new(&p, "S3", 3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[1, 2]])])
            .unwrap();
        assert!(evaluate_word(&Word::identity(), &h).unwrap().is_identity());
        assert_eq!(
            evaluate_word(&Word::generator(0), &h).unwrap(),
            perm(3, &[&[0, 1]])
        );
        let ab = evaluate_word(&Word::from_signed(&[1, 2]), &h).unwrap();
        assert_eq!(ab, perm(3, &[&[0, 1]]).then(&perm(3, &[&[1, 2]])));
        assert_eq!(ab.order(), 3);
        assert!(matches!(
            evaluate_word(&Word::generator(5), &h),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn z2_star_z2_counts() {
        let p = z2z2();
        assert_eq!(enumerate_homomorphisms(&p, 2).unwrap().len(), 4);
        assert_eq!(enumerate_homomorphisms(&p, 3).unwrap().len(), 16);
        assert_eq!(brute_force_count(&p, 3), 16);
    }

    #[test]
    fn infinite_cyclic_into_s2() {
        assert_eq!(
            enumerate_homomorphisms(&Presentation::free(["a"]), 2)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn degree_limit() {
        assert!(matches!(
            enumerate_homomorphisms(&z2z2(), 8),
            Err(Error::DegreeTooLarge {
                degree: 8,
                limit: 7
            })
        ));
    }

    #[test]
    fn results_are_homomorphisms_and_distinct() {
        let p = Presentation::new(
            ["x", "y"],
            vec![
                Word::power(0, 3),
                Word::power(1, 2),
                Word::from_signed(&[1, 2, 1, 2]),
            ],
        )
        .unwrap();
        let homs = enumerate_homomorphisms(&p, 4).unwrap();
        assert_eq!(homs.len(), brute_force_count(&p, 4));
        let mut seen = std::collections::HashSet::new();
        for h in &homs {
            assert!(h.respects_relators(&p).unwrap());
            assert!(seen.insert(h.assignment.clone()));
        }
    }

    #[test]
    fn cyclic_counts_match_order_census() {
        for n in 1..=5 {
            let els = symmetric_group_elements(n);
            for k in 1..=6i64 {
                let p = Presentation::new(["a"], vec![Word::power(0, k)]).unwrap();
                let census = els
                    .iter()
                    .filter(|e| (k as u64).is_multiple_of(e.order()))
                    .count();
                assert_eq!(
                    enumerate_homomorphisms(&p, n).unwrap().len(),
                    census,
                    "n={n} k={k}"
                );
            }
        }
    }
}
