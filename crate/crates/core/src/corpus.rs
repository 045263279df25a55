//! The semigroup corpus backing the oracle suites: every built-in family up
//! to carrier 6, every associative table on up to 4 elements, and derived
//! members with non-discrete setoids (quotients and empty-apartness
//! variants).

use crate::document::generate_family;
use crate::kernels::fine_apartness;
use crate::relations::FiniteRelation;
use crate::semigroup::{congruence_closure, quotient, SemigroupWithApartness};
use rand::Rng;
use std::sync::OnceLock;

#[derive(Clone, Debug)]
pub struct CorpusMember {
    pub name: String,
    pub sg: SemigroupWithApartness,
    /// Identity equality with denial apartness.
    pub discrete: bool,
}

pub struct Corpus {
    pub members: Vec<CorpusMember>,
}

impl Corpus {
    pub fn with_max_carrier(&self, max_n: usize) -> impl Iterator<Item = &CorpusMember> {
        self.members.iter().filter(move |m| m.sg.carrier() <= max_n)
    }
}

/// Every table on `n` elements that defines an associative multiplication,
/// by depth-first fill with associativity pruning.
pub fn associative_tables(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut table = vec![0u32; n * n];
    fill(0, n, &mut table, &mut out);
    out
}

fn fill(pos: usize, n: usize, table: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == n * n {
        out.push(table.clone());
        return;
    }
    for v in 0..n as u32 {
        table[pos] = v;
        if partial_associative(pos, n, table) {
            fill(pos + 1, n, table, out);
        }
    }
}

/// Checks every associativity triple whose four table cells are already
/// filled (cells `0..=pos`).
fn partial_associative(pos: usize, n: usize, table: &[u32]) -> bool {
    for x in 0..n {
        for y in 0..n {
            let c_xy = x * n + y;
            if c_xy > pos {
                continue;
            }
            let xy = table[c_xy] as usize;
            for z in 0..n {
                let c_yz = y * n + z;
                if c_yz > pos {
                    continue;
                }
                let yz = table[c_yz] as usize;
                let c_left = xy * n + z;
                let c_right = x * n + yz;
                if c_left <= pos && c_right <= pos && table[c_left] != table[c_right] {
                    return false;
                }
            }
        }
    }
    true
}

/// All family specs whose carriers stay within `max_n`.
pub fn family_specs(max_n: usize) -> Vec<String> {
    let mut specs = Vec::new();
    for k in 1..=max_n {
        for family in ["cyclic", "leftzero", "rightzero", "null", "meet_chain"] {
            specs.push(format!("{family}:{k}"));
        }
    }
    for m in 1..=max_n {
        for r in 1..=max_n {
            if m + r - 1 <= max_n {
                specs.push(format!("monogenic:{m}:{r}"));
            }
        }
    }
    for k in 1..=4usize {
        if k.pow(k as u32) <= max_n {
            specs.push(format!("fulltransform:{k}"));
        }
    }
    specs
}

fn push_variants(members: &mut Vec<CorpusMember>, name: &str, sg: &SemigroupWithApartness) {
    let n = sg.carrier();
    if n < 2 {
        return;
    }
    // Quotient by the congruence identifying the first and last element,
    // once with the fine apartness of the congruence and once with the
    // empty apartness.
    let seed = FiniteRelation::from_pairs(n, &[(0, n - 1)]).expect("indices in range");
    let rho = congruence_closure(&seed, sg).expect("same carrier");
    if rho != *sg.setoid().eq() {
        let kappa = fine_apartness(&rho).expect("congruences are equivalences");
        let q = quotient(sg, &rho, &kappa).expect("fine apartness of a congruence factors");
        members.push(member(format!("{name}/q"), q.semigroup));
        let q0 =
            quotient(sg, &rho, &FiniteRelation::empty(n)).expect("the empty apartness factors");
        members.push(member(format!("{name}/q0"), q0.semigroup));
    }
    // Same table with the apartness forgotten.
    let blind = quotient(sg, sg.setoid().eq(), &FiniteRelation::empty(n))
        .expect("the empty apartness factors");
    members.push(member(format!("{name}/apt0"), blind.semigroup));
}

fn member(name: String, sg: SemigroupWithApartness) -> CorpusMember {
    let discrete = sg.setoid().is_discrete_setoid();
    CorpusMember { name, sg, discrete }
}

fn build_corpus() -> Corpus {
    let mut members = Vec::new();
    for spec in family_specs(6) {
        let sg = generate_family(&spec)
            .expect("catalog specs are valid")
            .to_semigroup()
            .expect("families validate");
        members.push(member(spec.clone(), sg));
    }
    for n in 1..=4usize {
        for (i, table) in associative_tables(n).into_iter().enumerate() {
            let sg = SemigroupWithApartness::discrete(n, table)
                .expect("enumerated tables are associative");
            members.push(member(format!("table{n}:{i}"), sg));
        }
    }
    // Non-discrete variants of the families and the small tables.
    let bases: Vec<(String, SemigroupWithApartness)> = members
        .iter()
        .filter(|m| m.sg.carrier() <= 3 || !m.name.starts_with("table"))
        .map(|m| (m.name.clone(), m.sg.clone()))
        .collect();
    for (name, sg) in &bases {
        push_variants(&mut members, name, sg);
    }
    Corpus { members }
}

/// The shared corpus, built once.
pub fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(build_corpus)
}

/// A random relation with a density drawn from the generator.
pub fn random_relation(n: usize, rng: &mut impl Rng) -> FiniteRelation {
    let density = rng.gen_range(1..=9) as f64 / 10.0;
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if rng.gen_bool(density) {
                pairs.push((x, y));
            }
        }
    }
    FiniteRelation::from_pairs(n, &pairs).expect("indices in range")
}
