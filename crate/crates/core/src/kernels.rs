//! Kernel operators on relations: the cotransitive kernel, the
//! coequivalence kernel, fine apartness, and independent brute-force
//! oracles for cross-checking them.

use crate::error::{Error, Result};
use crate::relations::{FiniteRelation, FiniteSetoid};

/// Cotransitive kernel together with the step at which the running
/// intersection of filled powers stabilised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelResult {
    pub kernel: FiniteRelation,
    pub fixpoint_step: usize,
}

/// Iterated filled power: the first power is the relation itself, and each
/// further power multiplies by the base on the left.
pub fn filled_power(rel: &FiniteRelation, k: usize) -> Result<FiniteRelation> {
    if k == 0 {
        return Err(Error::ZeroFilledPower);
    }
    let mut power = rel.clone();
    for _ in 1..k {
        power = rel.filled_product(&power)?;
    }
    Ok(power)
}

/// Raw quantifier check for cotransitivity, used by classifiers and the
/// falsification oracles. Deliberately does not route through the filled
/// product.
pub fn is_cotransitive_raw(rel: &FiniteRelation) -> bool {
    let n = rel.carrier();
    rel.pairs()
        .iter()
        .all(|&(x, z)| (0..n).all(|y| rel.contains(x, y) || rel.contains(y, z)))
}

/// Greatest cotransitive subrelation, computed as the intersection of the
/// filled powers up to the `n + 2` bound, with early exit as soon as the
/// running intersection is itself cotransitive.
pub fn cotransitive_kernel(rel: &FiniteRelation) -> KernelResult {
    let cap = rel.carrier() + 2;
    let mut power = rel.clone();
    let mut inter = rel.clone();
    let mut step = 1usize;
    let mut first_stall: Option<usize> = None;
    loop {
        let cotransitive = inter.is_subset_of(
            &inter
                .filled_product(&inter)
                .expect("same carrier by construction"),
        );
        if cotransitive || step >= cap {
            // Once the intersection is cotransitive it equals the kernel and
            // never shrinks again, so the stall happens here at the latest.
            let fixpoint_step = first_stall.unwrap_or(step);
            return KernelResult {
                kernel: inter,
                fixpoint_step,
            };
        }
        let next_power = rel
            .filled_product(&power)
            .expect("same carrier by construction");
        let next_inter = inter
            .intersection(&next_power)
            .expect("same carrier by construction");
        if first_stall.is_none() && next_inter == inter {
            first_stall = Some(step);
        }
        power = next_power;
        inter = next_inter;
        step += 1;
    }
}

/// Strategy for the independent kernel oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleStrategy {
    /// Union of all cotransitive subrelations, by enumerating every subset
    /// of the pair set. Only for carriers of size at most 3.
    SubsetUnion,
    /// Greatest fixpoint by repeatedly deleting pairs that violate
    /// cotransitivity. Works at any size.
    ViolationRemoval,
}

/// Independent computation of the greatest cotransitive subrelation.
pub fn cotransitive_kernel_oracle(
    rel: &FiniteRelation,
    strategy: OracleStrategy,
) -> Result<FiniteRelation> {
    match strategy {
        OracleStrategy::SubsetUnion => {
            let n = rel.carrier();
            if n > 3 {
                return Err(Error::OracleCarrierTooLarge { n, max: 3 });
            }
            let pairs = rel.pairs();
            let mut union = FiniteRelation::empty(n);
            for mask in 0u32..1 << pairs.len() {
                let chosen: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let candidate = FiniteRelation::from_pairs(n, &chosen)?;
                if is_cotransitive_raw(&candidate) {
                    union = union.union(&candidate)?;
                }
            }
            Ok(union)
        }
        OracleStrategy::ViolationRemoval => {
            let n = rel.carrier();
            let mut current = rel.clone();
            loop {
                let violations: Vec<(usize, usize)> = current
                    .pairs()
                    .into_iter()
                    .filter(|&(x, z)| {
                        !(0..n).all(|y| current.contains(x, y) || current.contains(y, z))
                    })
                    .collect();
                if violations.is_empty() {
                    return Ok(current);
                }
                current = current.difference(&FiniteRelation::from_pairs(n, &violations)?)?;
            }
        }
    }
}

/// Greatest coequivalence contained in the relation:
/// the cotransitive kernel of `rel` meet its inverse meet the apartness.
pub fn coequivalence_kernel(rel: &FiniteRelation, ctx: &FiniteSetoid) -> Result<FiniteRelation> {
    Ok(coequivalence_kernel_with_step(rel, ctx)?.kernel)
}

/// Like [`coequivalence_kernel`], also reporting the fixpoint step of the
/// inner cotransitive kernel.
pub fn coequivalence_kernel_with_step(
    rel: &FiniteRelation,
    ctx: &FiniteSetoid,
) -> Result<KernelResult> {
    if rel.carrier() != ctx.carrier() {
        return Err(Error::CarrierMismatch {
            left: rel.carrier(),
            right: ctx.carrier(),
        });
    }
    let symmetric_core = rel.intersection(&rel.inverse())?.intersection(ctx.apt())?;
    Ok(cotransitive_kernel(&symmetric_core))
}

/// The greatest apartness compatible with an equivalence: the cotransitive
/// kernel of its complement.
pub fn fine_apartness(eq: &FiniteRelation) -> Result<FiniteRelation> {
    validate_equivalence_raw(eq)?;
    Ok(cotransitive_kernel(&eq.complement()).kernel)
}

fn validate_equivalence_raw(eq: &FiniteRelation) -> Result<()> {
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

/// The relation on the hypercube `{0,1}^k` (encoded as integers, bit `i` is
/// coordinate `i`) holding exactly when the Hamming distance is at least 2.
pub fn hamming2_relation(k: usize) -> Result<FiniteRelation> {
    if !(1..=12).contains(&k) {
        return Err(Error::HammingOutOfRange { k });
    }
    let n = 1usize << k;
    let mut rel = FiniteRelation::empty(n);
    for u in 0..n {
        for v in 0..n {
            if (u ^ v).count_ones() >= 2 {
                rel.set(u, v);
            }
        }
    }
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::classify_relation;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> FiniteRelation {
        FiniteRelation::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn filled_power_examples() {
        let a = rel(3, &[(0, 1), (1, 2)]);
        assert!(filled_power(&a, 2).unwrap().is_empty());
        let full = FiniteRelation::full(2);
        assert_eq!(filled_power(&full, 2).unwrap(), full);
        let denial = FiniteRelation::identity(3).complement();
        for k in 1..=4 {
            assert_eq!(filled_power(&denial, k).unwrap(), denial);
        }
        assert_eq!(filled_power(&a, 0), Err(Error::ZeroFilledPower));
    }

    #[test]
    fn kernel_examples() {
        let a = rel(3, &[(0, 1), (1, 2)]);
        let k = cotransitive_kernel(&a);
        assert!(k.kernel.is_empty());
        assert_eq!(k.fixpoint_step, 2);

        // Denial inequality minus the pair {0, 2} is already cotransitive.
        let b = rel(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert!(is_cotransitive_raw(&b));
        let k = cotransitive_kernel(&b);
        assert_eq!(k.kernel, b);
        assert_eq!(k.fixpoint_step, 1);

        let denial = FiniteRelation::identity(3).complement();
        let k = cotransitive_kernel(&denial);
        assert_eq!(k.kernel, denial);
        assert_eq!(k.fixpoint_step, 1);
    }

    #[test]
    fn oracle_examples() {
        let a = rel(3, &[(0, 2)]);
        assert!(cotransitive_kernel_oracle(&a, OracleStrategy::SubsetUnion)
            .unwrap()
            .is_empty());
        let full = FiniteRelation::full(3);
        assert_eq!(
            cotransitive_kernel_oracle(&full, OracleStrategy::SubsetUnion).unwrap(),
            full
        );
        assert_eq!(
            cotransitive_kernel_oracle(&FiniteRelation::full(4), OracleStrategy::SubsetUnion),
            Err(Error::OracleCarrierTooLarge { n: 4, max: 3 })
        );
        assert_eq!(
            cotransitive_kernel_oracle(&full, OracleStrategy::ViolationRemoval).unwrap(),
            full
        );
    }

    #[test]
    fn kernel_agrees_with_both_oracles_on_all_n3_relations() {
        // Exhaustive sweep over all 2^9 relations on a 3-element carrier.
        let positions: Vec<(usize, usize)> =
            (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        for mask in 0u32..512 {
            let pairs: Vec<(usize, usize)> = positions
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let a = rel(3, &pairs);
            let kernel = cotransitive_kernel(&a).kernel;
            let by_union = cotransitive_kernel_oracle(&a, OracleStrategy::SubsetUnion).unwrap();
            let by_removal =
                cotransitive_kernel_oracle(&a, OracleStrategy::ViolationRemoval).unwrap();
            assert_eq!(kernel, by_union, "mask {mask}");
            assert_eq!(kernel, by_removal, "mask {mask}");
        }
    }

    #[test]
    fn kernel_operator_laws() {
        let shapes = [
            rel(3, &[(0, 1), (1, 2), (2, 0)]),
            rel(3, &[(0, 1), (1, 0), (0, 2)]),
            FiniteRelation::full(3),
            rel(3, &[(0, 0), (0, 1), (1, 2)]),
        ];
        for a in &shapes {
            let ka = cotransitive_kernel(a).kernel;
            assert!(ka.is_subset_of(a));
            assert!(is_cotransitive_raw(&ka));
            assert_eq!(cotransitive_kernel(&ka).kernel, ka);
            for b in &shapes {
                let ab = a.union(b).unwrap();
                assert!(ka.is_subset_of(&cotransitive_kernel(&ab).kernel));
            }
        }
    }

    #[test]
    fn kernel_preserves_symmetry_and_irreflexivity() {
        let d3 = FiniteSetoid::discrete(3);
        let shapes = [
            rel(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]),
            rel(3, &[(0, 1), (1, 0)]),
            rel(3, &[(0, 1), (1, 0), (0, 2), (2, 0)]),
        ];
        for a in &shapes {
            let before = classify_relation(a, &d3).unwrap();
            let after = classify_relation(&cotransitive_kernel(a).kernel, &d3).unwrap();
            if before.symmetric {
                assert!(after.symmetric);
            }
            if before.irreflexive {
                assert!(after.irreflexive);
            }
            if before.strongly_irreflexive {
                assert!(after.strongly_irreflexive);
            }
        }
    }

    #[test]
    fn quasiorder_complement_round_trip_on_n3() {
        // For every reflexive transitive relation on 3 elements, the
        // complement of the kernel of the complement gives the relation back.
        let positions: Vec<(usize, usize)> =
            (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        let d3 = FiniteSetoid::discrete(3);
        let mut quasiorders = 0;
        for mask in 0u32..512 {
            let pairs: Vec<(usize, usize)> = positions
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let a = rel(3, &pairs);
            if !classify_relation(&a, &d3).unwrap().quasiorder {
                continue;
            }
            quasiorders += 1;
            let kernel = cotransitive_kernel(&a.complement()).kernel;
            assert_eq!(kernel.complement(), a);
        }
        assert!(quasiorders > 10);
    }

    #[test]
    fn coequivalence_kernel_examples() {
        let d2 = FiniteSetoid::discrete(2);
        assert_eq!(
            coequivalence_kernel(d2.apt(), &d2).unwrap(),
            d2.apt().clone()
        );
        assert_eq!(
            coequivalence_kernel(&FiniteRelation::full(2), &d2).unwrap(),
            rel(2, &[(0, 1), (1, 0)])
        );
        assert!(coequivalence_kernel(&rel(2, &[(0, 1)]), &d2)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn coequivalence_kernel_matches_subset_union_oracle() {
        let d3 = FiniteSetoid::discrete(3);
        let positions: Vec<(usize, usize)> =
            (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        for mask in (0u32..512).step_by(7) {
            let pairs: Vec<(usize, usize)> = positions
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let a = rel(3, &pairs);
            let q = coequivalence_kernel(&a, &d3).unwrap();
            // Union of all coequivalence subrelations of a.
            let mut union = FiniteRelation::empty(3);
            let all = a.pairs();
            for sub in 0u32..1 << all.len() {
                let chosen: Vec<(usize, usize)> = all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| sub >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let cand = rel(3, &chosen);
                let report = classify_relation(&cand, &d3).unwrap();
                if report.coequivalence {
                    union = union.union(&cand).unwrap();
                }
            }
            assert_eq!(q, union, "mask {mask}");
        }
    }

    #[test]
    fn fine_apartness_examples() {
        let id3 = FiniteRelation::identity(3);
        assert_eq!(fine_apartness(&id3).unwrap(), id3.complement());
        let full = FiniteRelation::full(3);
        assert!(fine_apartness(&full).unwrap().is_empty());
        let eq = rel(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)]);
        let fine = fine_apartness(&eq).unwrap();
        assert_eq!(fine, rel(3, &[(0, 2), (2, 0), (1, 2), (2, 1)]));
        assert_eq!(
            fine,
            cotransitive_kernel_oracle(&eq.complement(), OracleStrategy::SubsetUnion).unwrap()
        );
        assert!(fine_apartness(&rel(3, &[(0, 0)])).is_err());
    }

    #[test]
    fn hamming_examples() {
        assert!(hamming2_relation(1).unwrap().is_empty());
        let h2 = hamming2_relation(2).unwrap();
        assert!(h2.contains(0b00, 0b11));
        assert!(!h2.contains(0b00, 0b01));
        assert_eq!(hamming2_relation(0), Err(Error::HammingOutOfRange { k: 0 }));
        assert_eq!(
            hamming2_relation(13),
            Err(Error::HammingOutOfRange { k: 13 })
        );

        let h3 = hamming2_relation(3).unwrap();
        let k = cotransitive_kernel(&h3);
        assert!(k.kernel.is_empty());
        assert!(k.fixpoint_step <= 5);
    }

    #[test]
    fn fixpoint_bound_holds_for_dense_and_sparse_shapes() {
        for n in 1..=5 {
            let full = FiniteRelation::full(n);
            assert!(cotransitive_kernel(&full).fixpoint_step <= n + 2);
            let id = FiniteRelation::identity(n);
            assert!(cotransitive_kernel(&id).fixpoint_step <= n + 2);
            assert!(cotransitive_kernel(&id.complement()).fixpoint_step <= n + 2);
        }
    }
}
