//! Abelianization via the integer Smith normal form of the relator matrix.

use std::fmt;

use crate::presentation::Presentation;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `ℤ^free_rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_k` with `t₁ | t₂ | … | t_k`, each `tᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|t| u64::try_from(t).expect("torsion factor fits in u64"))
            .collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|t| match u64::try_from(t) {
                Ok(v) => v.into(),
                Err(_) => t.to_string().into(),
            })
            .collect();
        serde_json::json!({ "free_rank": self.free_rank, "torsion": torsion, "display": self.to_string() })
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, re-normalized into invariant factors.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.torsion.len() + other.torsion.len();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (i, t) in self.torsion.iter().chain(&other.torsion).enumerate() {
            m[i][i] = t.clone();
        }
        let diag = smith_diagonal(m, n);
        Self {
            free_rank: self.free_rank + other.free_rank,
            torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Relator exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators()
        .iter()
        .map(|r| {
            r.exponent_sums(p.generator_count())
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect()
}

pub fn abelianization(p: &Presentation) -> AbelianGroupStructure {
    let cols = p.generator_count();
    let diag = smith_diagonal(relation_matrix(p), cols);
    let rank = diag.len();
    AbelianGroupStructure {
        free_rank: cols - rank,
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Nonzero invariant factors of an integer matrix with `cols` columns, in
/// divisibility order, all positive.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()));
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let (upper, lower) = m.split_at_mut(i);
                for (x, y) in lower[0][t..cols].iter_mut().zip(&upper[t][t..cols]) {
                    *x -= &q * y;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the trailing block; otherwise fold a row in
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
            match bad {
                Some(i) => {
                    let (upper, lower) = m.split_at_mut(i);
                    for (x, y) in upper[t][t..cols].iter_mut().zip(&lower[0][t..cols]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Brute-force determinantal divisors: gcd of all k×k minors.
    fn determinantal_divisors(m: &[Vec<i64>], cols: usize) -> Vec<i64> {
        fn det(m: &[Vec<i64>]) -> i64 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, &v)| v)
                                .collect()
                        })
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * det(&minor)
                })
                .sum()
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let rows = m.len();
        let mut out = Vec::new();
        for k in 1..=rows.min(cols) {
            let mut g = 0i64;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i64>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                        .collect();
                    g = num_integer::gcd(g, det(&sub));
                }
            }
            if g == 0 {
                break;
            }
            out.push(g);
        }
        out
    }

    #[test]
    fn diag_two_two() {
        let p = Presentation::new(["a", "b"], vec![Word::power(0, 2), Word::power(1, 2)]).unwrap();
        let ab = abelianization(&p);
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion_u64(), vec![2, 2]);
    }

    #[test]
    fn semidirect_form_matches() {
        // ⟨a,c | a², a c a⁻¹ c⟩
        let p = Presentation::new(
            ["a", "c"],
            vec![Word::power(0, 2), Word::from_signed(&[1, 2, -1, 2])],
        )
        .unwrap();
        let ab = abelianization(&p);
        assert_eq!((ab.free_rank, ab.torsion_u64()), (0, vec![2, 2]));
    }

    #[test]
    fn free_group() {
        let ab = abelianization(&Presentation::free(["a", "b"]));
        assert_eq!((ab.free_rank, ab.torsion.len()), (2, 0));
        assert_eq!(ab.to_string(), "Z^2");
    }

    #[test]
    fn non_diagonal_inputs() {
        assert_eq!(
            smith_diagonal(vec![big(&[2, 4]), big(&[6, 8])], 2),
            big(&[2, 4])
        );
        assert_eq!(
            smith_diagonal(vec![big(&[4, 0]), big(&[0, 6])], 2),
            big(&[2, 12])
        );
        // ℤ₂ ⊕ ℤ₃ ≅ ℤ₆
        assert_eq!(
            smith_diagonal(vec![big(&[2, 0]), big(&[0, 3])], 2),
            big(&[1, 6])
        );
    }

    #[test]
    fn large_entries_do_not_overflow() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let m = vec![
            vec![huge.clone(), BigInt::zero()],
            vec![BigInt::zero(), &huge * 2],
        ];
        assert_eq!(smith_diagonal(m, 2), vec![huge.clone(), huge * 2]);
    }

    #[test]
    fn direct_sum_normalizes() {
        let a = AbelianGroupStructure {
            free_rank: 1,
            torsion: big(&[2]),
        };
        let b = AbelianGroupStructure {
            free_rank: 0,
            torsion: big(&[3]),
        };
        assert_eq!(
            a.direct_sum(&b),
            AbelianGroupStructure {
                free_rank: 1,
                torsion: big(&[6])
            }
        );
    }

    proptest! {
        #[test]
        fn invariant_factors_match_determinantal_divisors(
            rows in 1usize..4, cols in 1usize..4,
            entries in prop::collection::vec(-6i64..7, 9),
        ) {
            let m: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| entries[r * 3 + c]).collect()).collect();
            let diag = smith_diagonal(m.iter().map(|r| big(r)).collect(), cols);
            let dd = determinantal_divisors(&m, cols);
            prop_assert_eq!(diag.len(), dd.len());
            let mut prod = BigInt::one();
            for (d, expected) in diag.iter().zip(&dd) {
                prod *= d;
                prop_assert_eq!(&prod, &BigInt::from(expected.abs()));
            }
            for w in diag.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }

        #[test]
        fn invariant_under_relator_order_and_inversion(
            rels in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 1..4),
            flip in prop::collection::vec(any::<bool>(), 4),
            rot in 0usize..4,
        ) {
            let words: Vec<Word> = rels.iter().map(|e| {
                e.iter().enumerate().flat_map(|(g, &k)| Word::power(g, k).into_letters()).collect()
            }).collect();
            let p = Presentation::new(["x", "y", "z"], words.clone()).unwrap();
            let mut shuffled: Vec<Word> = words.iter().zip(&flip)
                .map(|(w, &f)| if f { w.inverse() } else { w.clone() }).collect();
            let len = shuffled.len();
            shuffled.rotate_left(rot % len);
            let q = Presentation::new(["x", "y", "z"], shuffled).unwrap();
            prop_assert_eq!(abelianization(&p), abelianization(&q));
        }
    }
}
