//! Semigroups with apartness: eager validation, the adjoined identity,
//! compatible and congruence closures, the co-congruence machinery (eta and
//! zeta), quotients, Rees factors from co-ideals, idempotents, periodicity,
//! regularity and morphisms.

use crate::error::{Error, Result};
use crate::kernels::coequivalence_kernel;
use crate::relations::{
    classify_relation, equivalence_closure, subset_checks, FiniteRelation, FiniteSetoid,
    FiniteSubset,
};

/// A finite semigroup over a setoid, with the multiplication table validated
/// eagerly: associativity up to equality, extensionality of the
/// multiplication over the equality, and strong extensionality with respect
/// to the apartness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemigroupWithApartness {
    setoid: FiniteSetoid,
    table: Vec<u32>,
}

impl SemigroupWithApartness {
    pub fn new(setoid: FiniteSetoid, table: Vec<u32>) -> Result<Self> {
        let n = setoid.carrier();
        if table.len() != n * n {
            return Err(Error::TableSizeMismatch {
                expected: n * n,
                got: table.len(),
            });
        }
        for x in 0..n {
            for y in 0..n {
                let value = table[x * n + y] as usize;
                if value >= n {
                    return Err(Error::TableEntryOutOfRange { x, y, value, n });
                }
            }
        }
        let sg = SemigroupWithApartness { setoid, table };
        sg.validate_associativity()?;
        sg.validate_extensionality()?;
        sg.validate_strong_extensionality()?;
        Ok(sg)
    }

    /// Discrete setoid shortcut: identity equality, denial apartness.
    pub fn discrete(n: usize, table: Vec<u32>) -> Result<Self> {
        Self::new(FiniteSetoid::discrete(n), table)
    }

    fn validate_associativity(&self) -> Result<()> {
        let n = self.carrier();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if !self
                        .setoid
                        .eq_holds(self.mul(xy, z), self.mul(x, self.mul(y, z)))
                    {
                        return Err(Error::NonAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_extensionality(&self) -> Result<()> {
        let n = self.carrier();
        for (x, x_eq) in self.setoid.eq().pairs() {
            if x == x_eq {
                continue;
            }
            for y in 0..n {
                if !self.setoid.eq_holds(self.mul(x, y), self.mul(x_eq, y))
                    || !self.setoid.eq_holds(self.mul(y, x), self.mul(y, x_eq))
                {
                    return Err(Error::NotExtensional {
                        x,
                        x_eq,
                        y,
                        y_eq: y,
                    });
                }
            }
        }
        Ok(())
    }

    fn validate_strong_extensionality(&self) -> Result<()> {
        if self.setoid.apt().is_empty() {
            return Ok(());
        }
        // Contrapositive form: whenever neither x # z nor y # w, the products
        // must not be apart either.
        let not_apt = self.setoid.apt().complement().pairs();
        for &(x, z) in &not_apt {
            for &(y, w) in &not_apt {
                if self.setoid.apt_holds(self.mul(x, y), self.mul(z, w)) {
                    return Err(Error::NotStronglyExtensional { x, y, z, w });
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> usize {
        self.setoid.carrier()
    }

    pub fn setoid(&self) -> &FiniteSetoid {
        &self.setoid
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.carrier() + y] as usize
    }

    pub fn eq_holds(&self, x: usize, y: usize) -> bool {
        self.setoid.eq_holds(x, y)
    }

    pub fn apt_holds(&self, x: usize, y: usize) -> bool {
        self.setoid.apt_holds(x, y)
    }

    /// Product where either operand may be the adjoined identity, encoded as
    /// index `n`.
    pub(crate) fn mul1(&self, s: usize, u: usize) -> usize {
        let n = self.carrier();
        match (s == n, u == n) {
            (true, _) => u,
            (_, true) => s,
            _ => self.mul(s, u),
        }
    }

    /// Three-fold product `s * u * t` with `s` and `t` ranging over the
    /// adjoined-identity indices `0..=n`.
    pub(crate) fn translate(&self, s: usize, u: usize, t: usize) -> usize {
        self.mul1(self.mul1(s, u), t)
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.eq_holds(self.mul(e, e), e)
    }
}

/// Adjoins a fresh identity at index `n`, apart from every old element.
pub fn adjoin_identity(s: &SemigroupWithApartness) -> SemigroupWithApartness {
    let n = s.carrier();
    let m = n + 1;
    let mut table = vec![0u32; m * m];
    for x in 0..m {
        for y in 0..m {
            table[x * m + y] = if x == n {
                y as u32
            } else if y == n {
                x as u32
            } else {
                s.table[x * n + y]
            };
        }
    }
    let mut eq_pairs = s.setoid.eq().pairs();
    eq_pairs.push((n, n));
    let mut apt_pairs = s.setoid.apt().pairs();
    for x in 0..n {
        apt_pairs.push((x, n));
        apt_pairs.push((n, x));
    }
    let eq = FiniteRelation::from_pairs(m, &eq_pairs).expect("indices in range");
    let apt = FiniteRelation::from_pairs(m, &apt_pairs).expect("indices in range");
    let setoid = FiniteSetoid::new(eq, apt).expect("adjoined identity preserves the axioms");
    SemigroupWithApartness::new(setoid, table).expect("adjoined identity preserves the axioms")
}

/// Least left-and-right compatible relation containing `rel`: the union of
/// all two-sided translates `(s u t, s v t)` with `s, t` ranging over the
/// semigroup with an identity adjoined.
pub fn compatible_closure(
    rel: &FiniteRelation,
    s: &SemigroupWithApartness,
) -> Result<FiniteRelation> {
    let n = s.carrier();
    if rel.carrier() != n {
        return Err(Error::CarrierMismatch {
            left: rel.carrier(),
            right: n,
        });
    }
    let mut pairs = Vec::new();
    for (u, v) in rel.pairs() {
        for si in 0..=n {
            for ti in 0..=n {
                pairs.push((s.translate(si, u, ti), s.translate(si, v, ti)));
            }
        }
    }
    FiniteRelation::from_pairs(n, &pairs)
}

/// Least congruence containing `rel` and the setoid equality.
pub fn congruence_closure(
    rel: &FiniteRelation,
    s: &SemigroupWithApartness,
) -> Result<FiniteRelation> {
    let compatible = compatible_closure(rel, s)?;
    equivalence_closure(&compatible, s.setoid().eq())
}

/// Compatibility flags of a relation over a semigroup, all by exhaustive
/// quantifier evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub left_compatible: bool,
    pub right_compatible: bool,
    pub congruence: bool,
    pub left_co_compatible: bool,
    pub right_co_compatible: bool,
    pub co_compatible: bool,
    pub co_congruence: bool,
}

pub fn classify_compatibility(
    rel: &FiniteRelation,
    s: &SemigroupWithApartness,
) -> Result<CompatibilityReport> {
    let n = s.carrier();
    if rel.carrier() != n {
        return Err(Error::CarrierMismatch {
            left: rel.carrier(),
            right: n,
        });
    }
    let base = classify_relation(rel, s.setoid())?;
    let pairs = rel.pairs();

    let left_compatible = pairs
        .iter()
        .all(|&(x, y)| (0..n).all(|u| rel.contains(s.mul(u, x), s.mul(u, y))));
    let right_compatible = pairs
        .iter()
        .all(|&(x, y)| (0..n).all(|u| rel.contains(s.mul(x, u), s.mul(y, u))));

    let mut left_co_compatible = true;
    'left: for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                if rel.contains(s.mul(a, x), s.mul(a, y)) && !rel.contains(x, y) {
                    left_co_compatible = false;
                    break 'left;
                }
            }
        }
    }
    let mut right_co_compatible = true;
    'right: for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                if rel.contains(s.mul(x, a), s.mul(y, a)) && !rel.contains(x, y) {
                    right_co_compatible = false;
                    break 'right;
                }
            }
        }
    }
    let mut co_compatible = true;
    'co: for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                for y in 0..n {
                    if rel.contains(s.mul(a, x), s.mul(b, y))
                        && !rel.contains(a, b)
                        && !rel.contains(x, y)
                    {
                        co_compatible = false;
                        break 'co;
                    }
                }
            }
        }
    }

    Ok(CompatibilityReport {
        left_compatible,
        right_compatible,
        congruence: base.equivalence && left_compatible && right_compatible,
        left_co_compatible,
        right_co_compatible,
        co_compatible,
        co_congruence: base.coequivalence && co_compatible,
    })
}

/// The translate-quantified co-compatibility filter: `(x, y)` survives iff
/// for all `u, v` in the semigroup and `s, t` in the adjoined-identity
/// range, either `u rel v` holds or `(x, y)` is apart from `(sut, svt)` in
/// the product apartness.
pub fn eta(rel: &FiniteRelation, s: &SemigroupWithApartness) -> Result<FiniteRelation> {
    let n = s.carrier();
    if rel.carrier() != n {
        return Err(Error::CarrierMismatch {
            left: rel.carrier(),
            right: n,
        });
    }
    // Translate orbits of the non-member pairs are the only constraints.
    let mut constraints: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rel.contains(u, v) {
                continue;
            }
            for si in 0..=n {
                for ti in 0..=n {
                    constraints.push((s.translate(si, u, ti), s.translate(si, v, ti)));
                }
            }
        }
    }
    constraints.sort_unstable();
    constraints.dedup();
    let mut out = FiniteRelation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if constraints
                .iter()
                .all(|&(p, q)| s.apt_holds(x, p) || s.apt_holds(y, q))
            {
                out.set(x, y);
            }
        }
    }
    Ok(out)
}

/// Greatest co-congruence contained in `rel`: the coequivalence kernel of
/// the eta filter.
pub fn co_congruence_kernel(
    rel: &FiniteRelation,
    s: &SemigroupWithApartness,
) -> Result<FiniteRelation> {
    let filtered = eta(rel, s)?;
    coequivalence_kernel(&filtered, s.setoid())
}

/// Like [`co_congruence_kernel`], also reporting the fixpoint step of the
/// inner cotransitive kernel.
pub fn co_congruence_kernel_with_step(
    rel: &FiniteRelation,
    s: &SemigroupWithApartness,
) -> Result<crate::kernels::KernelResult> {
    let filtered = eta(rel, s)?;
    crate::kernels::coequivalence_kernel_with_step(&filtered, s.setoid())
}

/// A quotient semigroup together with its projection morphism.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub semigroup: SemigroupWithApartness,
    pub projection: Morphism,
}

/// Factor semigroup: same carrier and table, with the congruence taken as
/// the new equality and the co-congruence as the new apartness. Class
/// representatives for display are the least indices.
pub fn quotient(
    s: &SemigroupWithApartness,
    rho: &FiniteRelation,
    kappa: &FiniteRelation,
) -> Result<QuotientResult> {
    let n = s.carrier();
    if rho.carrier() != n {
        return Err(Error::CarrierMismatch {
            left: rho.carrier(),
            right: n,
        });
    }
    if kappa.carrier() != n {
        return Err(Error::CarrierMismatch {
            left: kappa.carrier(),
            right: n,
        });
    }
    if !classify_compatibility(rho, s)?.congruence {
        return Err(Error::NotCongruence);
    }
    if !classify_compatibility(kappa, s)?.co_congruence {
        return Err(Error::NotCoCongruence);
    }
    if let Some(&(x, y)) = rho.intersection(kappa)?.pairs().first() {
        return Err(Error::QuotientNotDisjoint { x, y });
    }
    let setoid = FiniteSetoid::new(rho.clone(), kappa.clone())?;
    let semigroup = SemigroupWithApartness::new(setoid, s.table.clone())?;
    let projection = Morphism::new(s.clone(), semigroup.clone(), (0..n).collect())?;
    Ok(QuotientResult {
        semigroup,
        projection,
    })
}

/// Quotient by coarse equality (the complement of the apartness); the
/// resulting apartness is tight.
pub fn coarse_quotient(s: &SemigroupWithApartness) -> SemigroupWithApartness {
    let rho = s.setoid().apt().complement();
    quotient(s, &rho, s.setoid().apt())
        .expect("coarse equality is a congruence disjoint from the apartness")
        .semigroup
}

/// Idempotents, the set of elements apart from their squares, and whether
/// the idempotents form a closed subset.
#[derive(Clone, Debug)]
pub struct IdempotentReport {
    pub idempotents: FiniteSubset,
    pub apart_from_square: FiniteSubset,
    pub idempotents_closed: bool,
}

pub fn idempotents_and_c(s: &SemigroupWithApartness) -> IdempotentReport {
    let n = s.carrier();
    let mut idempotents = FiniteSubset::empty(n);
    let mut apart_from_square = FiniteSubset::empty(n);
    for x in 0..n {
        let sq = s.mul(x, x);
        if s.eq_holds(sq, x) {
            idempotents.insert(x);
        }
        if s.apt_holds(x, sq) {
            apart_from_square.insert(x);
        }
    }
    let closed = subset_checks(&idempotents, s.setoid())
        .expect("same carrier")
        .closed;
    IdempotentReport {
        idempotents,
        apart_from_square,
        idempotents_closed: closed,
    }
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub inverses: FiniteSubset,
    pub regular: bool,
}

/// The inverse set `V(a)` and regularity of an element.
pub fn regularity(s: &SemigroupWithApartness, a: usize) -> Result<RegularityReport> {
    let n = s.carrier();
    if a >= n {
        return Err(Error::IndexOutOfRange { n, index: a });
    }
    let mut inverses = FiniteSubset::empty(n);
    let mut regular = false;
    for x in 0..n {
        let axa = s.mul(s.mul(a, x), a);
        if s.eq_holds(axa, a) {
            regular = true;
            if s.eq_holds(s.mul(s.mul(x, a), x), x) {
                inverses.insert(x);
            }
        }
    }
    Ok(RegularityReport { inverses, regular })
}

pub fn is_regular_semigroup(s: &SemigroupWithApartness) -> bool {
    (0..s.carrier()).all(|a| regularity(s, a).expect("index in range").regular)
}

/// Index, period, least idempotent power and orbit of a monogenic
/// subsemigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonogenicData {
    pub index: usize,
    pub period: usize,
    pub idempotent_power: usize,
    pub orbit: Vec<usize>,
}

/// Least `m, r >= 1` with `a^(m+r)` equal to `a^m` (up to the setoid
/// equality), the least power at which an idempotent appears, and the orbit
/// `a^1 .. a^(m+r-1)`.
pub fn index_period(s: &SemigroupWithApartness, a: usize) -> Result<MonogenicData> {
    let n = s.carrier();
    if a >= n {
        return Err(Error::IndexOutOfRange { n, index: a });
    }
    let mut orbit = vec![a];
    let (index, period) = loop {
        let next = s.mul(*orbit.last().expect("orbit non-empty"), a);
        if let Some(pos) = orbit.iter().position(|&p| s.eq_holds(p, next)) {
            break (pos + 1, orbit.len() + 1 - (pos + 1));
        }
        orbit.push(next);
    };
    let idempotent_power = (1..=orbit.len())
        .find(|&p| s.is_idempotent(orbit[p - 1]))
        .ok_or(Error::Internal {
            what: "monogenic orbit holds an idempotent power",
        })?;
    Ok(MonogenicData {
        index,
        period,
        idempotent_power,
        orbit,
    })
}

/// Convexity and co-ideal flags of a subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoIdealReport {
    pub strongly_extensional: bool,
    pub left_convex: bool,
    pub right_convex: bool,
    pub co_ideal: bool,
    pub co_subsemigroup: bool,
}

pub fn co_ideal_check(set: &FiniteSubset, s: &SemigroupWithApartness) -> Result<CoIdealReport> {
    let n = s.carrier();
    if set.carrier() != n {
        return Err(Error::CarrierMismatch {
            left: set.carrier(),
            right: n,
        });
    }
    let strongly_extensional = subset_checks(set, s.setoid())?.strongly_extensional;
    let mut left_convex = true;
    let mut right_convex = true;
    let mut splittable = true;
    for a in 0..n {
        for b in 0..n {
            if set.contains(s.mul(a, b)) {
                left_convex &= set.contains(a);
                right_convex &= set.contains(b);
                splittable &= set.contains(a) || set.contains(b);
            }
        }
    }
    Ok(CoIdealReport {
        strongly_extensional,
        left_convex,
        right_convex,
        co_ideal: strongly_extensional && left_convex && right_convex,
        co_subsemigroup: strongly_extensional && splittable,
    })
}

/// Rees factor data: the factor semigroup, the co-congruence giving its
/// apartness, and the Rees congruence over the complementary ideal.
#[derive(Clone, Debug)]
pub struct ReesFactor {
    pub semigroup: SemigroupWithApartness,
    pub kappa: FiniteRelation,
    pub rees_congruence: FiniteRelation,
}

/// Rees factor by the ideal complementary to a co-ideal `A`: the congruence
/// collapses the ideal to a zero, the apartness holds between apart elements
/// at least one of which lies in `A`.
pub fn rees_factor(s: &SemigroupWithApartness, set: &FiniteSubset) -> Result<ReesFactor> {
    let report = co_ideal_check(set, s)?;
    if !report.co_ideal {
        return Err(Error::NotCoIdeal {
            strongly_extensional: report.strongly_extensional,
            left_convex: report.left_convex,
            right_convex: report.right_convex,
        });
    }
    let n = s.carrier();
    let ideal = set.complement();
    // For a strongly extensional subset the apartness complement coincides
    // with the logical complement.
    debug_assert_eq!(
        crate::relations::subset_apartness_complement(set, s.setoid()),
        ideal
    );
    let mut rho = s.setoid().eq().clone();
    for x in ideal.members() {
        for y in ideal.members() {
            rho.set(x, y);
        }
    }
    let mut kappa = FiniteRelation::empty(n);
    for (x, y) in s.setoid().apt().pairs() {
        if set.contains(x) || set.contains(y) {
            kappa.set(x, y);
        }
    }
    if !classify_compatibility(&kappa, s)?.co_congruence {
        return Err(Error::Internal {
            what: "kappa of a co-ideal is a co-congruence",
        });
    }
    if !rho.is_subset_of(&kappa.complement()) {
        return Err(Error::Internal {
            what: "the Rees congruence avoids kappa",
        });
    }
    let factored = quotient(s, &rho, &kappa)?;
    Ok(ReesFactor {
        semigroup: factored.semigroup,
        kappa,
        rees_congruence: rho,
    })
}

/// An index map between two semigroups-with-apartness, validated to be an
/// extensional homomorphism.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: SemigroupWithApartness,
    target: SemigroupWithApartness,
    map: Vec<usize>,
}

impl Morphism {
    pub fn new(
        source: SemigroupWithApartness,
        target: SemigroupWithApartness,
        map: Vec<usize>,
    ) -> Result<Self> {
        let n = source.carrier();
        if map.len() != n {
            return Err(Error::MapLengthMismatch {
                expected: n,
                got: map.len(),
            });
        }
        for &v in &map {
            if v >= target.carrier() {
                return Err(Error::IndexOutOfRange {
                    n: target.carrier(),
                    index: v,
                });
            }
        }
        for (x, y) in source.setoid().eq().pairs() {
            if !target.eq_holds(map[x], map[y]) {
                return Err(Error::MapNotExtensional { x, y });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !target.eq_holds(map[source.mul(x, y)], target.mul(map[x], map[y])) {
                    return Err(Error::NotHomomorphism { x, y });
                }
            }
        }
        Ok(Morphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &SemigroupWithApartness {
        &self.source
    }

    pub fn target(&self) -> &SemigroupWithApartness {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// Kernel, cokernel and the extensionality / injectivity flags of a
/// morphism.
#[derive(Clone, Debug)]
pub struct MorphismReport {
    pub strongly_extensional: bool,
    pub apartness_injective: bool,
    pub ker: FiniteRelation,
    pub cker: FiniteRelation,
    pub injective: bool,
    pub surjective: bool,
}

pub fn morphism_checks(f: &Morphism) -> MorphismReport {
    let n = f.source.carrier();
    let mut ker = FiniteRelation::empty(n);
    let mut cker = FiniteRelation::empty(n);
    let mut strongly_extensional = true;
    let mut apartness_injective = true;
    let mut injective = true;
    for x in 0..n {
        for y in 0..n {
            let fx = f.map[x];
            let fy = f.map[y];
            if f.target.eq_holds(fx, fy) {
                ker.set(x, y);
                injective &= f.source.eq_holds(x, y);
            }
            if f.target.apt_holds(fx, fy) {
                cker.set(x, y);
                strongly_extensional &= f.source.apt_holds(x, y);
            }
            if f.source.apt_holds(x, y) {
                apartness_injective &= f.target.apt_holds(fx, fy);
            }
        }
    }
    let surjective =
        (0..f.target.carrier()).all(|t| f.map.iter().any(|&fx| f.target.eq_holds(fx, t)));
    MorphismReport {
        strongly_extensional,
        apartness_injective,
        ker,
        cker,
        injective,
        surjective,
    }
}

/// A semigroup is a group iff left and right translation by every element
/// reach every equivalence class.
pub fn is_group(s: &SemigroupWithApartness) -> bool {
    let n = s.carrier();
    (0..n).all(|a| {
        (0..n).all(|target| {
            (0..n).any(|x| s.eq_holds(s.mul(a, x), target))
                && (0..n).any(|x| s.eq_holds(s.mul(x, a), target))
        })
    })
}
