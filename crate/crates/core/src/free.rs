//! Words over an apartness setoid of generators: concatenation, word
//! apartness, and extension of generator maps to semigroup morphisms.
//!
//! The free semigroup is never materialised as a carrier; its claims are
//! checked on bounded-length word samples.

use crate::error::{Error, Result};
use crate::relations::FiniteSetoid;
use crate::semigroup::SemigroupWithApartness;
use std::fmt;

/// A non-empty sequence of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Word {
    /// Letters render as `g0,g1,...` by index.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|i| format!("g{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Juxtaposition of words.
pub fn word_concat(u: &Word, v: &Word) -> Word {
    let mut letters = u.letters.clone();
    letters.extend_from_slice(&v.letters);
    Word { letters }
}

fn check_word(w: &Word, x: &FiniteSetoid) -> Result<()> {
    for &l in &w.letters {
        if l >= x.carrier() {
            return Err(Error::IndexOutOfRange {
                n: x.carrier(),
                index: l,
            });
        }
    }
    Ok(())
}

/// Word apartness: different lengths, or equal lengths with some coordinate
/// pair apart in the generator setoid.
pub fn word_apart(u: &Word, v: &Word, x: &FiniteSetoid) -> Result<bool> {
    check_word(u, x)?;
    check_word(v, x)?;
    if u.len() != v.len() {
        return Ok(true);
    }
    Ok(u.letters
        .iter()
        .zip(&v.letters)
        .any(|(&a, &b)| x.apt_holds(a, b)))
}

/// Word equality: equal lengths and componentwise setoid equality.
pub fn word_eq(u: &Word, v: &Word, x: &FiniteSetoid) -> Result<bool> {
    check_word(u, x)?;
    check_word(v, x)?;
    Ok(u.len() == v.len()
        && u.letters
            .iter()
            .zip(&v.letters)
            .all(|(&a, &b)| x.eq_holds(a, b)))
}

/// Evaluates the unique morphism extending a strongly extensional generator
/// map on the given word sample. The extension is the left fold of the map
/// along each word; the homomorphism and apartness-reflection contracts are
/// verified on the sample.
pub fn extend_morphism(
    x: &FiniteSetoid,
    map: &[usize],
    words: &[Word],
    s: &SemigroupWithApartness,
) -> Result<Vec<usize>> {
    if map.len() != x.carrier() {
        return Err(Error::MapLengthMismatch {
            expected: x.carrier(),
            got: map.len(),
        });
    }
    for &v in map {
        if v >= s.carrier() {
            return Err(Error::IndexOutOfRange {
                n: s.carrier(),
                index: v,
            });
        }
    }
    for i in 0..x.carrier() {
        for j in 0..x.carrier() {
            if x.eq_holds(i, j) && !s.eq_holds(map[i], map[j]) {
                return Err(Error::MapNotExtensional { x: i, y: j });
            }
            if s.apt_holds(map[i], map[j]) && !x.apt_holds(i, j) {
                return Err(Error::MapNotStronglyExtensional { x: i, y: j });
            }
        }
    }
    for w in words {
        check_word(w, x)?;
    }

    let eval = |w: &Word| -> usize {
        let mut acc = map[w.letters[0]];
        for &l in &w.letters[1..] {
            acc = s.mul(acc, map[l]);
        }
        acc
    };
    let values: Vec<usize> = words.iter().map(eval).collect();

    for (wu, &pu) in words.iter().zip(&values) {
        for (wv, &pv) in words.iter().zip(&values) {
            let concat = eval(&word_concat(wu, wv));
            if !s.eq_holds(concat, s.mul(pu, pv)) {
                return Err(Error::Internal {
                    what: "word evaluation is a homomorphism",
                });
            }
            if s.apt_holds(pu, pv) && !word_apart(wu, wv, x)? {
                return Err(Error::Internal {
                    what: "word evaluation reflects apartness",
                });
            }
        }
    }
    Ok(values)
}

/// All words of length `1..=max_len` over `k` generators, in length-then-lex
/// order.
pub fn words_up_to(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for stem in &frontier {
            for l in 0..k {
                let mut w = stem.clone();
                w.push(l);
                next.push(w);
            }
        }
        for w in &next {
            out.push(Word { letters: w.clone() });
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::generate_family;
    use crate::relations::FiniteRelation;

    fn w(letters: &[usize]) -> Word {
        Word::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn concat_examples() {
        let xy = word_concat(&w(&[0]), &w(&[1]));
        assert_eq!(xy.letters(), &[0, 1]);
        let a = w(&[0, 1]);
        let b = w(&[1]);
        let c = w(&[0, 0, 1]);
        assert_eq!(
            word_concat(&word_concat(&a, &b), &c),
            word_concat(&a, &word_concat(&b, &c))
        );
        assert_eq!(word_concat(&a, &c).len(), a.len() + c.len());
        assert!(Word::new(vec![]).is_err());
    }

    #[test]
    fn word_apartness_examples() {
        let x = FiniteSetoid::discrete(2);
        assert!(word_apart(&w(&[0, 1]), &w(&[0]), &x).unwrap());
        assert!(!word_apart(&w(&[0, 1]), &w(&[0, 1]), &x).unwrap());
        let blind = FiniteSetoid::with_empty_apartness(FiniteRelation::identity(2)).unwrap();
        assert!(!word_apart(&w(&[0, 1]), &w(&[1, 0]), &blind).unwrap());
        assert!(word_eq(&w(&[0, 1]), &w(&[0, 1]), &x).unwrap());
        assert!(!word_eq(&w(&[0, 1]), &w(&[1, 0]), &x).unwrap());
    }

    #[test]
    fn word_apartness_axioms_on_samples() {
        // Irreflexive, symmetric and cotransitive over every sample of all
        // words of length <= 3, for generator setoids of size <= 3.
        for k in 1..=3usize {
            let x = FiniteSetoid::discrete(k);
            let sample = words_up_to(k, 3);
            for u in &sample {
                assert!(!word_apart(u, u, &x).unwrap());
                for v in &sample {
                    let uv = word_apart(u, v, &x).unwrap();
                    assert_eq!(uv, word_apart(v, u, &x).unwrap());
                    if uv {
                        for z in &sample {
                            assert!(word_apart(u, z, &x).unwrap() || word_apart(z, v, &x).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn word_apartness_tightness_tracks_the_generators() {
        // Over a tight generator setoid, sampled words that are not apart
        // are equal; over an apartness-free setoid they need not be.
        let tight = FiniteSetoid::discrete(2);
        for u in words_up_to(2, 3) {
            for v in words_up_to(2, 3) {
                if !word_apart(&u, &v, &tight).unwrap() {
                    assert!(word_eq(&u, &v, &tight).unwrap());
                }
            }
        }
        let blind = FiniteSetoid::with_empty_apartness(FiniteRelation::identity(2)).unwrap();
        let u = w(&[0]);
        let v = w(&[1]);
        assert!(!word_apart(&u, &v, &blind).unwrap());
        assert!(!word_eq(&u, &v, &blind).unwrap());
    }

    #[test]
    fn extension_examples() {
        let x = FiniteSetoid::discrete(2);
        let z2 = generate_family("cyclic:2").unwrap().to_semigroup().unwrap();
        let values = extend_morphism(&x, &[1, 1], &[w(&[0, 1])], &z2).unwrap();
        assert_eq!(values, vec![0]);

        let letters = [w(&[0]), w(&[1])];
        assert_eq!(
            extend_morphism(&x, &[1, 0], &letters, &z2).unwrap(),
            vec![1, 0]
        );

        let lz = generate_family("leftzero:2")
            .unwrap()
            .to_semigroup()
            .unwrap();
        let values = extend_morphism(&x, &[0, 1], &[w(&[0, 1, 0])], &lz).unwrap();
        assert_eq!(values, vec![0]);
    }

    #[test]
    fn extension_rejects_non_strongly_extensional_maps() {
        // Two generators equal in X but mapped to apart elements.
        let eq = FiniteRelation::from_pairs(2, &[(0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
        let x = FiniteSetoid::with_empty_apartness(eq).unwrap();
        let z2 = generate_family("cyclic:2").unwrap().to_semigroup().unwrap();
        assert!(matches!(
            extend_morphism(&x, &[0, 1], &[w(&[0])], &z2),
            Err(Error::MapNotExtensional { .. }) | Err(Error::MapNotStronglyExtensional { .. })
        ));
    }

    #[test]
    fn words_up_to_counts() {
        assert_eq!(words_up_to(2, 4).len(), 2 + 4 + 8 + 16);
        assert_eq!(words_up_to(3, 1).len(), 3);
    }
}
