//! Dense binary relations over a carrier `{0..n-1}`, packed one bit per
//! pair, together with the setoid structure (equality plus apartness)
//! everything else in the crate is built on.
//!
//! Relations are immutable values with structural equality; every operation
//! returns a fresh value. Quantifiers are evaluated exhaustively over the
//! carrier, so all classifier flags are exact.

use crate::error::{Error, Result};
use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Mask selecting the valid bits of the final word of a row.
fn tail_mask(n: usize) -> u64 {
    match n % WORD_BITS {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

/// A binary relation on `{0..n-1} x {0..n-1}`, one bit per pair.
///
/// Rows are packed into `u64` words; bits past column `n-1` are kept zero so
/// that structural equality of the packed data is equality of relations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteRelation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for FiniteRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRelation(n={}, pairs={:?})", self.n, self.pairs())
    }
}

impl FiniteRelation {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        FiniteRelation {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut rel = Self::empty(n);
        if n == 0 {
            return rel;
        }
        let mask = tail_mask(n);
        for row in 0..n {
            let base = row * rel.words;
            for w in 0..rel.words {
                rel.bits[base + w] = if w + 1 == rel.words { mask } else { !0 };
            }
        }
        rel
    }

    pub fn identity(n: usize) -> Self {
        let mut rel = Self::empty(n);
        for x in 0..n {
            rel.set(x, x);
        }
        rel
    }

    /// Builds a relation from an explicit pair list; duplicates are ignored.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rel = Self::empty(n);
        for &(x, y) in pairs {
            if x >= n {
                return Err(Error::IndexOutOfRange { n, index: x });
            }
            if y >= n {
                return Err(Error::IndexOutOfRange { n, index: y });
            }
            rel.set(x, y);
        }
        Ok(rel)
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub(crate) fn set(&mut self, x: usize, y: usize) {
        debug_assert!(x < self.n && y < self.n);
        self.bits[x * self.words + y / WORD_BITS] |= 1u64 << (y % WORD_BITS);
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        debug_assert!(x < self.n && y < self.n);
        self.bits[x * self.words + y / WORD_BITS] >> (y % WORD_BITS) & 1 == 1
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.words..(x + 1) * self.words]
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Number of member pairs.
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Member pairs in row-major (lexicographic) order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for x in 0..self.n {
            for (w, &word) in self.row(x).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let y = w * WORD_BITS + word.trailing_zeros() as usize;
                    out.push((x, y));
                    word &= word - 1;
                }
            }
        }
        out
    }

    fn check_same_carrier(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_carrier(other)?;
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same_carrier(other)?;
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
        Ok(out)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same_carrier(other)?;
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a &= !b;
        }
        Ok(out)
    }

    /// Total complement within the `n x n` square.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        if self.n == 0 {
            return out;
        }
        let mask = tail_mask(self.n);
        for row in 0..self.n {
            let base = row * self.words;
            for w in 0..self.words {
                let m = if w + 1 == self.words { mask } else { !0 };
                out.bits[base + w] = !self.bits[base + w] & m;
            }
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = Self::empty(self.n);
        for x in 0..self.n {
            for (w, &word) in self.row(x).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let y = w * WORD_BITS + word.trailing_zeros() as usize;
                    out.set(y, x);
                    word &= word - 1;
                }
            }
        }
        out
    }

    /// Relational composition: `(x, z)` is in the result iff there is a `y`
    /// with `x a y` and `y b z`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_carrier(other)?;
        let mut out = Self::empty(self.n);
        for x in 0..self.n {
            let (pre, post) = out.bits.split_at_mut(x * self.words);
            debug_assert!(pre.len() <= x * self.words);
            let dest = &mut post[..self.words];
            for (w, &word) in self.row(x).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let y = w * WORD_BITS + word.trailing_zeros() as usize;
                    for (d, s) in dest.iter_mut().zip(other.row(y)) {
                        *d |= s;
                    }
                    word &= word - 1;
                }
            }
        }
        Ok(out)
    }

    /// Filled product: `(x, y)` is in the result iff for every `z` either
    /// `x a z` or `z b y` holds.
    pub fn filled_product(&self, other: &Self) -> Result<Self> {
        self.check_same_carrier(other)?;
        let n = self.n;
        let mut out = Self::empty(n);
        if n == 0 {
            return Ok(out);
        }
        let cols = other.inverse();
        let mask = tail_mask(n);
        for x in 0..n {
            let row_a = self.row(x);
            for y in 0..n {
                let col_b = cols.row(y);
                let covered = row_a.iter().zip(col_b).enumerate().all(|(w, (&a, &b))| {
                    let m = if w + 1 == self.words { mask } else { !0 };
                    a | b == m
                });
                if covered {
                    out.set(x, y);
                }
            }
        }
        Ok(out)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "carrier mismatch in subset test");
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Least transitive relation containing `self`.
    pub fn transitive_closure(&self) -> Self {
        let mut out = self.clone();
        let n = self.n;
        for k in 0..n {
            for x in 0..n {
                if out.contains(x, k) && x != k {
                    let row_k = out.row(k).to_vec();
                    let base = x * out.words;
                    for (w, s) in row_k.iter().enumerate() {
                        out.bits[base + w] |= s;
                    }
                }
            }
            // x == k contributes nothing new: row k OR row k.
        }
        out
    }
}

/// Least equivalence containing both `rel` and the setoid equality `eq`.
pub fn equivalence_closure(rel: &FiniteRelation, eq: &FiniteRelation) -> Result<FiniteRelation> {
    let sym = rel.union(&rel.inverse())?;
    Ok(sym.union(eq)?.transitive_closure())
}

/// A subset of the carrier `{0..n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSubset {
    n: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteSubset(n={}, members={:?})",
            self.n,
            self.members()
        )
    }
}

impl FiniteSubset {
    pub fn empty(n: usize) -> Self {
        FiniteSubset {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for x in 0..n {
            s.insert(x);
        }
        s
    }

    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        let mut s = Self::empty(n);
        for &x in members {
            if x >= n {
                return Err(Error::IndexOutOfRange { n, index: x });
            }
            s.insert(x);
        }
        Ok(s)
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, x: usize) {
        debug_assert!(x < self.n);
        self.bits[x / WORD_BITS] |= 1u64 << (x % WORD_BITS);
    }

    pub fn contains(&self, x: usize) -> bool {
        debug_assert!(x < self.n);
        self.bits[x / WORD_BITS] >> (x % WORD_BITS) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.contains(x)).collect()
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::empty(self.n);
        for x in 0..self.n {
            if !self.contains(x) {
                out.insert(x);
            }
        }
        out
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::CarrierMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        Ok(out)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "carrier mismatch in subset test");
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// A carrier with an equivalence (the equality) and an apartness relation.
///
/// The constructor validates the axioms: `eq` is an equivalence, `apt` is
/// symmetric, cotransitive, disjoint from `eq` and extensional over it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSetoid {
    n: usize,
    eq: FiniteRelation,
    apt: FiniteRelation,
}

impl FiniteSetoid {
    pub fn new(eq: FiniteRelation, apt: FiniteRelation) -> Result<Self> {
        let n = eq.carrier();
        if apt.carrier() != n {
            return Err(Error::CarrierMismatch {
                left: n,
                right: apt.carrier(),
            });
        }
        validate_equivalence(&eq)?;
        validate_apartness(&apt, &eq)?;
        Ok(FiniteSetoid { n, eq, apt })
    }

    /// Identity equality with denial apartness.
    pub fn discrete(n: usize) -> Self {
        let eq = FiniteRelation::identity(n);
        let apt = eq.complement();
        FiniteSetoid { n, eq, apt }
    }

    /// The given equivalence with denial apartness (its total complement).
    pub fn denial(eq: FiniteRelation) -> Result<Self> {
        let apt = eq.complement();
        Self::new(eq, apt)
    }

    /// The given equivalence with the empty apartness.
    pub fn with_empty_apartness(eq: FiniteRelation) -> Result<Self> {
        let apt = FiniteRelation::empty(eq.carrier());
        Self::new(eq, apt)
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn eq(&self) -> &FiniteRelation {
        &self.eq
    }

    pub fn apt(&self) -> &FiniteRelation {
        &self.apt
    }

    pub fn eq_holds(&self, x: usize, y: usize) -> bool {
        self.eq.contains(x, y)
    }

    pub fn apt_holds(&self, x: usize, y: usize) -> bool {
        self.apt.contains(x, y)
    }

    /// Least index equal to `x`; the canonical class representative.
    pub fn class_rep(&self, x: usize) -> usize {
        (0..self.n).find(|&y| self.eq.contains(x, y)).unwrap_or(x)
    }

    pub fn is_discrete_setoid(&self) -> bool {
        self.eq == FiniteRelation::identity(self.n) && self.apt == self.eq.complement()
    }

    /// The square setoid on `n * n` with componentwise equality and the
    /// product apartness, pairs encoded row-major.
    pub fn square(&self) -> FiniteSetoid {
        let n = self.n;
        let mut eq_sq = FiniteRelation::empty(n * n);
        for x1 in 0..n {
            for y1 in 0..n {
                for x2 in 0..n {
                    for y2 in 0..n {
                        if self.eq_holds(x1, x2) && self.eq_holds(y1, y2) {
                            eq_sq.set(x1 * n + y1, x2 * n + y2);
                        }
                    }
                }
            }
        }
        let apt_sq = product_apartness(self, self);
        FiniteSetoid::new(eq_sq, apt_sq).expect("product of setoids is a setoid")
    }
}

fn validate_equivalence(eq: &FiniteRelation) -> Result<()> {
    let n = eq.carrier();
    for x in 0..n {
        if !eq.contains(x, x) {
            return Err(Error::NotReflexive { x });
        }
    }
    for (x, y) in eq.pairs() {
        if !eq.contains(y, x) {
            return Err(Error::NotSymmetric { x, y });
        }
        for z in 0..n {
            if eq.contains(y, z) && !eq.contains(x, z) {
                return Err(Error::NotTransitive { x, y, z });
            }
        }
    }
    Ok(())
}

fn validate_apartness(apt: &FiniteRelation, eq: &FiniteRelation) -> Result<()> {
    let n = apt.carrier();
    for (x, y) in apt.pairs() {
        if eq.contains(x, y) {
            return Err(Error::ApartnessMeetsEquality { x, y });
        }
        if !apt.contains(y, x) {
            return Err(Error::NotSymmetric { x, y });
        }
    }
    for (x, z) in apt.pairs() {
        for y in 0..n {
            if !apt.contains(x, y) && !apt.contains(y, z) {
                return Err(Error::ApartnessNotCotransitive { x, y, z });
            }
        }
    }
    for (x, y) in apt.pairs() {
        for x_eq in 0..n {
            if eq.contains(x, x_eq) && !apt.contains(x_eq, y) {
                return Err(Error::ApartnessNotExtensional { x, x_eq, y });
            }
        }
    }
    Ok(())
}

/// Flags produced by the relation classifiers. `reflexive` and `irreflexive`
/// are relative to the setoid equality; `strongly_irreflexive` means the
/// relation is contained in the apartness. The last four flags are only
/// filled in by [`classify_apartness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub reflexive: bool,
    pub irreflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub cotransitive: bool,
    pub strongly_irreflexive: bool,
    pub quasiorder: bool,
    pub equivalence: bool,
    pub co_quasiorder: bool,
    pub coequivalence: bool,
    pub tight: Option<bool>,
    pub standard: Option<bool>,
    pub discrete: Option<bool>,
    pub fine: Option<bool>,
}

/// Classifies a relation against a setoid by exhaustive quantifier checks.
pub fn classify_relation(rel: &FiniteRelation, ctx: &FiniteSetoid) -> Result<RelationReport> {
    if rel.carrier() != ctx.carrier() {
        return Err(Error::CarrierMismatch {
            left: rel.carrier(),
            right: ctx.carrier(),
        });
    }
    let n = ctx.carrier();
    let pairs = rel.pairs();

    let reflexive = ctx.eq().pairs().iter().all(|&(x, y)| rel.contains(x, y));
    let irreflexive = pairs.iter().all(|&(x, y)| !ctx.eq_holds(x, y));
    let symmetric = pairs.iter().all(|&(x, y)| rel.contains(y, x));
    let transitive = pairs
        .iter()
        .all(|&(x, y)| (0..n).all(|z| !rel.contains(y, z) || rel.contains(x, z)));
    let cotransitive = pairs
        .iter()
        .all(|&(x, z)| (0..n).all(|y| rel.contains(x, y) || rel.contains(y, z)));
    let strongly_irreflexive = pairs.iter().all(|&(x, y)| ctx.apt_holds(x, y));

    Ok(RelationReport {
        reflexive,
        irreflexive,
        symmetric,
        transitive,
        cotransitive,
        strongly_irreflexive,
        quasiorder: reflexive && transitive,
        equivalence: reflexive && symmetric && transitive,
        co_quasiorder: strongly_irreflexive && cotransitive,
        coequivalence: strongly_irreflexive && cotransitive && symmetric,
        tight: None,
        standard: None,
        discrete: None,
        fine: None,
    })
}

/// Classifies an apartness candidate against an equality. The candidate must
/// satisfy the apartness axioms relative to `eq`, otherwise this errors with
/// a witness.
pub fn classify_apartness(apt: &FiniteRelation, eq: &FiniteRelation) -> Result<RelationReport> {
    let ctx = FiniteSetoid::new(eq.clone(), apt.clone())?;
    let mut report = classify_relation(apt, &ctx)?;
    let n = ctx.carrier();
    report.tight = Some(apt.complement() == *eq);
    report.standard = Some(apt.union(eq)?.complement().is_empty());
    report.discrete = Some(apt.union(eq)? == FiniteRelation::full(n));
    report.fine = Some(*apt == crate::kernels::fine_apartness(eq)?);
    Ok(report)
}

/// Result of [`subset_checks`].
#[derive(Clone, Debug)]
pub struct SubsetReport {
    pub strongly_extensional: bool,
    pub closed: bool,
    pub apartness_complement: FiniteSubset,
}

fn subset_strongly_extensional(set: &FiniteSubset, ctx: &FiniteSetoid) -> bool {
    let n = ctx.carrier();
    set.members()
        .iter()
        .all(|&a| (0..n).all(|x| set.contains(x) || ctx.apt_holds(x, a)))
}

/// Apartness complement of a subset: the elements apart from every member.
pub fn subset_apartness_complement(set: &FiniteSubset, ctx: &FiniteSetoid) -> FiniteSubset {
    let n = ctx.carrier();
    let members = set.members();
    let mut out = FiniteSubset::empty(n);
    for x in 0..n {
        if members.iter().all(|&a| ctx.apt_holds(x, a)) {
            out.insert(x);
        }
    }
    out
}

/// Strong extensionality, closedness and the apartness complement of a
/// subset, all by exhaustive evaluation.
pub fn subset_checks(set: &FiniteSubset, ctx: &FiniteSetoid) -> Result<SubsetReport> {
    if set.carrier() != ctx.carrier() {
        return Err(Error::CarrierMismatch {
            left: set.carrier(),
            right: ctx.carrier(),
        });
    }
    let complement = subset_apartness_complement(set, ctx);
    Ok(SubsetReport {
        strongly_extensional: subset_strongly_extensional(set, ctx),
        closed: subset_strongly_extensional(&complement, ctx),
        apartness_complement: complement,
    })
}

/// The product apartness on the carrier of size `n1 * n2` with row-major
/// pair encoding `i1 * n2 + i2`.
pub fn product_apartness(s1: &FiniteSetoid, s2: &FiniteSetoid) -> FiniteRelation {
    let (n1, n2) = (s1.carrier(), s2.carrier());
    let mut out = FiniteRelation::empty(n1 * n2);
    for x1 in 0..n1 {
        for y1 in 0..n2 {
            for x2 in 0..n1 {
                for y2 in 0..n2 {
                    if s1.apt_holds(x1, x2) || s2.apt_holds(y1, y2) {
                        out.set(x1 * n2 + y1, x2 * n2 + y2);
                    }
                }
            }
        }
    }
    out
}

/// Apartness complement of a relation viewed as a subset of the square
/// carrier: `(x, y)` survives iff it is `apt_sq`-apart from every member
/// pair of `rel`. `apt_sq` must live on the carrier of size `n * n`.
pub fn apartness_complement(
    rel: &FiniteRelation,
    apt_sq: &FiniteRelation,
) -> Result<FiniteRelation> {
    let n = rel.carrier();
    if apt_sq.carrier() != n * n {
        return Err(Error::SquareCarrierMismatch {
            expected: n * n,
            got: apt_sq.carrier(),
        });
    }
    let members = rel.pairs();
    let mut out = FiniteRelation::empty(n);
    for x in 0..n {
        for y in 0..n {
            let p = x * n + y;
            if members.iter().all(|&(a, b)| apt_sq.contains(p, a * n + b)) {
                out.set(x, y);
            }
        }
    }
    Ok(out)
}

/// Same as [`apartness_complement`] but quantifying over the setoid's
/// product apartness directly, without materialising it.
pub fn apartness_complement_in(rel: &FiniteRelation, ctx: &FiniteSetoid) -> Result<FiniteRelation> {
    if rel.carrier() != ctx.carrier() {
        return Err(Error::CarrierMismatch {
            left: rel.carrier(),
            right: ctx.carrier(),
        });
    }
    let n = ctx.carrier();
    let members = rel.pairs();
    let mut out = FiniteRelation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if members
                .iter()
                .all(|&(a, b)| ctx.apt_holds(x, a) || ctx.apt_holds(y, b))
            {
                out.set(x, y);
            }
        }
    }
    Ok(out)
}
