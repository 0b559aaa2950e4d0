//! Finite permutation groups: breadth-first closure of generators, abstract
//! multiplication tables, the left-regular (Cayley) embedding into a symmetric
//! group, and constructors for a few named test families.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::perm::Permutation;
use crate::rng::SplitMix64;

/// Largest group order accepted by the named-family constructors; a `k × k`
/// table above this gets impractically large before anything else breaks.
pub const MAX_TABLE_ORDER: u64 = 5040;

/// Tables up to this size get an exhaustive associativity check; larger ones
/// are spot-checked on a fixed pseudorandom sample of triples.
const ASSOC_EXHAUSTIVE_LIMIT: usize = 512;
const ASSOC_SAMPLES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid multiplication table: {reason}")]
    BadTable { reason: String },
    #[error("multiplication table row {index} is not a permutation of 0..{size}")]
    NonLatinRow { index: usize, size: usize },
    #[error("multiplication table column {index} is not a permutation of 0..{size}")]
    NonLatinColumn { index: usize, size: usize },
    #[error("multiplication table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("invalid group parameter: {reason}")]
    BadParameter { reason: String },
}

/// A finite subgroup of S_n with its full element set enumerated.
///
/// Elements are stored sorted lexicographically by image sequence, so the
/// identity always comes first and iteration order is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements, identity first, then in lexicographic image order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Enumerates the subgroup generated by `generators` inside S_degree by
/// breadth-first product closure, failing once more than `cap` elements
/// appear.
pub fn close_generators(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<PermutationGroup, GroupError> {
    if cap == 0 {
        return Err(GroupError::BadParameter {
            reason: "cap must be at least 1".into(),
        });
    }
    for g in generators {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }

    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue: VecDeque<Permutation> = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);

    while let Some(current) = queue.pop_front() {
        for g in generators {
            let next = current.compose_unchecked(g);
            if !seen.contains(&next) {
                if seen.len() + 1 > cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }

    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(PermutationGroup {
        degree,
        generators: generators.to_vec(),
        elements,
    })
}

/// Abstract finite group given by its full multiplication table.
///
/// `table[a][b]` is the index of the product `a·b` and index 0 is the
/// identity. Construction validates the Latin-square property, the identity
/// conventions, and associativity (exhaustively up to 512 elements, sampled
/// above that).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    table: Vec<Vec<u32>>,
}

impl MultiplicationTable {
    pub fn new(table: Vec<Vec<u32>>) -> Result<Self, GroupError> {
        let k = table.len();
        if k == 0 {
            return Err(GroupError::BadTable {
                reason: "table is empty".into(),
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(GroupError::BadTable {
                    reason: format!("row {i} has length {}, expected {k}", row.len()),
                });
            }
            for &v in row {
                if v as usize >= k {
                    return Err(GroupError::BadTable {
                        reason: format!("row {i} contains entry {v}, out of range 0..{k}"),
                    });
                }
            }
        }
        for (b, &v) in table[0].iter().enumerate() {
            if v as usize != b {
                return Err(GroupError::BadTable {
                    reason: format!("index 0 is not a left identity: 0·{b} = {v}"),
                });
            }
        }
        for (a, row) in table.iter().enumerate() {
            if row[0] as usize != a {
                return Err(GroupError::BadTable {
                    reason: format!("index 0 is not a right identity: {a}·0 = {}", row[0]),
                });
            }
        }
        let mut seen = vec![false; k];
        for (i, row) in table.iter().enumerate() {
            seen.fill(false);
            for &v in row {
                if seen[v as usize] {
                    return Err(GroupError::NonLatinRow { index: i, size: k });
                }
                seen[v as usize] = true;
            }
        }
        for j in 0..k {
            seen.fill(false);
            for row in &table {
                let v = row[j] as usize;
                if seen[v] {
                    return Err(GroupError::NonLatinColumn { index: j, size: k });
                }
                seen[v] = true;
            }
        }

        let t = MultiplicationTable { table };
        t.check_associativity()?;
        Ok(t)
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        let k = self.size();
        let check = |a: usize, b: usize, c: usize| -> Result<(), GroupError> {
            if self.product(self.product(a, b), c) != self.product(a, self.product(b, c)) {
                return Err(GroupError::NotAssociative { a, b, c });
            }
            Ok(())
        };
        if k <= ASSOC_EXHAUSTIVE_LIMIT {
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(0x5ca1_ab1e);
            for _ in 0..ASSOC_SAMPLES {
                let a = rng.below(k);
                let b = rng.below(k);
                let c = rng.below(k);
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }

    /// Order of element `a` in the group.
    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.product(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.size();
        (0..k).all(|a| (a..k).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    size: usize,
    table: Vec<Vec<u32>>,
}

impl Serialize for MultiplicationTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TableRepr {
            size: self.size(),
            table: self.table.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiplicationTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TableRepr::deserialize(deserializer)?;
        if repr.size != repr.table.len() {
            return Err(D::Error::custom(format!(
                "declared size {} does not match table length {}",
                repr.size,
                repr.table.len()
            )));
        }
        MultiplicationTable::new(repr.table).map_err(D::Error::custom)
    }
}

/// Embeds the abstract group into S_{|G|} (or S_{|G|+1} with a trailing fixed
/// point) by letting each element act on the group by left multiplication.
pub fn regular_representation(
    t: &MultiplicationTable,
    add_fixed_point: bool,
) -> Result<PermutationGroup, GroupError> {
    let k = t.size();
    let degree = k + usize::from(add_fixed_point);

    let mut elements = Vec::with_capacity(k);
    for a in 0..k {
        let mut images: Vec<u32> = (0..k).map(|b| t.product(a, b) as u32 + 1).collect();
        if add_fixed_point {
            images.push(degree as u32);
        }
        let p = Permutation::from_images(images).expect("Latin row is a bijection");
        // Latin square + identity column force a·b ≠ b for a ≠ 0.
        debug_assert!(a == 0 || (1..=k as u32).all(|i| p.apply(i) != i));
        elements.push(p);
    }
    elements.sort_unstable();

    let generators = minimal_generators(degree, &elements);
    Ok(PermutationGroup {
        degree,
        generators,
        elements,
    })
}

/// Greedy generating set: walk the sorted elements and keep those not already
/// generated by the kept ones. Produces at most log2(|G|) generators.
fn minimal_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut generators: Vec<Permutation> = Vec::new();
    let mut generated: HashSet<Permutation> = HashSet::new();
    generated.insert(Permutation::identity(degree));
    for e in elements {
        if generated.contains(e) {
            continue;
        }
        generators.push(e.clone());
        let sub = close_generators(degree, &generators, elements.len())
            .expect("closure of a subset cannot exceed the group order");
        generated = sub.elements.into_iter().collect();
        if generated.len() == elements.len() {
            break;
        }
    }
    generators
}

/// Named group families, each compiled down to a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupFamily {
    /// Z/k.
    Cyclic(u64),
    /// Dihedral group with `k` rotations (order 2k).
    Dihedral(u64),
    /// Upper unitriangular 3×3 matrices over F_p (order p³, nonabelian,
    /// exponent p for odd p).
    HeisenbergModP(u64),
    /// Full symmetric group S_k (order k!).
    Symmetric(u64),
    DirectProduct(Box<GroupFamily>, Box<GroupFamily>),
}

impl GroupFamily {
    pub fn order(&self) -> Result<u64, GroupError> {
        let order = match self {
            GroupFamily::Cyclic(k) => *k,
            GroupFamily::Dihedral(k) => k.checked_mul(2).unwrap_or(u64::MAX),
            GroupFamily::HeisenbergModP(p) => p.saturating_pow(3),
            GroupFamily::Symmetric(k) => {
                let mut f: u64 = 1;
                for i in 2..=*k {
                    f = f.saturating_mul(i);
                }
                f
            }
            GroupFamily::DirectProduct(a, b) => a.order()?.saturating_mul(b.order()?),
        };
        Ok(order)
    }

    pub fn multiplication_table(&self) -> Result<MultiplicationTable, GroupError> {
        let order = self.order()?;
        if order == 0 || order > MAX_TABLE_ORDER {
            return Err(GroupError::BadParameter {
                reason: format!(
                    "{self} has order {order}, outside the supported range 1..={MAX_TABLE_ORDER}"
                ),
            });
        }
        let table = match self {
            GroupFamily::Cyclic(k) => cyclic_table(*k as usize),
            GroupFamily::Dihedral(k) => dihedral_table(*k as usize),
            GroupFamily::HeisenbergModP(p) => {
                if !is_prime(*p) {
                    return Err(GroupError::BadParameter {
                        reason: format!("heisenberg parameter {p} is not prime"),
                    });
                }
                heisenberg_table(*p as usize)
            }
            GroupFamily::Symmetric(k) => symmetric_table(*k as usize),
            GroupFamily::DirectProduct(a, b) => {
                direct_product_table(&a.multiplication_table()?, &b.multiplication_table()?)
            }
        };
        MultiplicationTable::new(table)
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Cyclic(k) => write!(f, "cyclic:{k}"),
            GroupFamily::Dihedral(k) => write!(f, "dihedral:{k}"),
            GroupFamily::HeisenbergModP(p) => write!(f, "heisenberg:{p}"),
            GroupFamily::Symmetric(k) => write!(f, "symmetric:{k}"),
            GroupFamily::DirectProduct(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

fn cyclic_table(k: usize) -> Vec<Vec<u32>> {
    (0..k)
        .map(|a| (0..k).map(|b| ((a + b) % k) as u32).collect())
        .collect()
}

/// Elements are (rotation r, flip s) encoded as s·k + r, with
/// (r1,s1)·(r2,s2) = (r1 + (−1)^{s1} r2, s1 ⊕ s2).
#[allow(clippy::needless_range_loop)]
fn dihedral_table(k: usize) -> Vec<Vec<u32>> {
    let order = 2 * k;
    let mut table = vec![vec![0u32; order]; order];
    for s1 in 0..2 {
        for r1 in 0..k {
            for s2 in 0..2 {
                for r2 in 0..k {
                    let r = if s1 == 0 { r1 + r2 } else { r1 + k - r2 } % k;
                    let s = s1 ^ s2;
                    table[s1 * k + r1][s2 * k + r2] = (s * k + r) as u32;
                }
            }
        }
    }
    table
}

/// Elements are (a,b,c) ↦ the matrix [[1,a,c],[0,1,b],[0,0,1]] over F_p,
/// encoded as a·p² + b·p + c.
#[allow(clippy::needless_range_loop)]
fn heisenberg_table(p: usize) -> Vec<Vec<u32>> {
    let order = p * p * p;
    let decode = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let mut table = vec![vec![0u32; order]; order];
    for x in 0..order {
        let (a1, b1, c1) = decode(x);
        for y in 0..order {
            let (a2, b2, c2) = decode(y);
            let a = (a1 + a2) % p;
            let b = (b1 + b2) % p;
            let c = (c1 + c2 + a1 * b2) % p;
            table[x][y] = (a * p * p + b * p + c) as u32;
        }
    }
    table
}

fn symmetric_table(k: usize) -> Vec<Vec<u32>> {
    use itertools::Itertools;

    // Lexicographic order puts the identity first.
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let index: std::collections::HashMap<&[usize], u32> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i as u32))
        .collect();
    perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let prod: Vec<usize> = (0..k).map(|i| a[b[i]]).collect();
                    index[prod.as_slice()]
                })
                .collect()
        })
        .collect()
}

fn direct_product_table(t1: &MultiplicationTable, t2: &MultiplicationTable) -> Vec<Vec<u32>> {
    let (k1, k2) = (t1.size(), t2.size());
    let order = k1 * k2;
    let mut table = vec![vec![0u32; order]; order];
    for a1 in 0..k1 {
        for a2 in 0..k2 {
            for b1 in 0..k1 {
                for b2 in 0..k2 {
                    let prod = t1.product(a1, b1) * k2 + t2.product(a2, b2);
                    table[a1 * k2 + a2][b1 * k2 + b2] = prod as u32;
                }
            }
        }
    }
    table
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::{One, Zero};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = close_generators(3, &[], 100).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.elements(), &[Permutation::identity(3)]);
    }

    #[test]
    fn five_cycle_generates_cyclic_group() {
        let c = perm("(1 2 3 4 5)", 5);
        let g = close_generators(5, std::slice::from_ref(&c), 100).unwrap();
        assert_eq!(g.order(), 5);
        for k in 0..5 {
            assert!(g.contains(&c.pow(k)));
        }
    }

    #[test]
    fn transposition_and_three_cycle_generate_s3() {
        let gens = [perm("(1 2)", 3), perm("(1 2 3)", 3)];
        let g = close_generators(3, &gens, 100).unwrap();
        assert_eq!(g.order(), 6);
        // Brute force: every permutation of 3 points is present.
        use itertools::Itertools;
        for images in (1..=3u32).permutations(3) {
            assert!(g.contains(&Permutation::from_images(images).unwrap()));
        }
    }

    #[test]
    fn s4_from_generators_has_24_elements() {
        let gens = [perm("(1 2)", 4), perm("(1 2 3 4)", 4)];
        let g = close_generators(4, &gens, 1000).unwrap();
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let gens = [perm("(1 2)", 4), perm("(1 2 3 4)", 4)];
        let err = close_generators(4, &gens, 10).unwrap_err();
        assert_eq!(err, GroupError::CapExceeded { cap: 10 });
        assert!(err.to_string().contains("10"));
    }

    #[test]
    fn mismatched_generator_degrees_are_rejected() {
        let gens = [perm("(1 2)", 2)];
        assert_eq!(
            close_generators(3, &gens, 10),
            Err(GroupError::DegreeMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn element_order_is_deterministic() {
        let gens = [perm("(1 2)", 4), perm("(2 3 4)", 4)];
        let a = close_generators(4, &gens, 1000).unwrap();
        let b = close_generators(4, &gens, 1000).unwrap();
        assert_eq!(a.elements(), b.elements());
        assert!(a.elements()[0].is_identity());
        for w in a.elements().windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn lagrange_holds_for_sample_groups() {
        let cases: Vec<PermutationGroup> = vec![
            close_generators(5, &[perm("(1 2 3 4 5)", 5)], 1000).unwrap(),
            close_generators(4, &[perm("(1 2)", 4), perm("(1 2 3 4)", 4)], 1000).unwrap(),
            close_generators(4, &[perm("(1 2 3)", 4), perm("(1 2)(3 4)", 4)], 1000).unwrap(),
        ];
        for g in cases {
            let mut fact = BigUint::one();
            for i in 2..=g.degree() {
                fact *= BigUint::from(i);
            }
            assert!((fact % BigUint::from(g.order())).is_zero());
        }
    }

    #[test]
    fn closure_is_sound_on_random_pairs() {
        let gens = [perm("(1 2 3)", 5), perm("(3 4 5)", 5)];
        let g = close_generators(5, &gens, 1000).unwrap();
        assert_eq!(g.order(), 60); // A_5
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = g.elements().choose(&mut rng).unwrap();
            let b = g.elements().choose(&mut rng).unwrap();
            assert!(g.contains(&a.compose(b).unwrap()));
            assert!(g.contains(&a.inverse()));
        }
        for gen in g.generators() {
            assert!(g.contains(gen));
        }
    }

    #[test]
    fn cyclic_table_is_z4() {
        let t = GroupFamily::Cyclic(4).multiplication_table().unwrap();
        assert_eq!(t.size(), 4);
        assert!(t.is_abelian());
        assert_eq!(t.element_order(1), 4);
        assert_eq!(t.element_order(2), 2);
    }

    #[test]
    fn heisenberg_3_is_nonabelian_of_exponent_3() {
        let t = GroupFamily::HeisenbergModP(3).multiplication_table().unwrap();
        assert_eq!(t.size(), 27);
        assert!(!t.is_abelian());
        for a in 1..27 {
            assert_eq!(t.element_order(a), 3, "element {a}");
        }
    }

    #[test]
    fn heisenberg_2_is_the_nonabelian_order_8_analogue() {
        let t = GroupFamily::HeisenbergModP(2).multiplication_table().unwrap();
        assert_eq!(t.size(), 8);
        assert!(!t.is_abelian());
    }

    #[test]
    fn dihedral_4_looks_like_d4() {
        let t = GroupFamily::Dihedral(4).multiplication_table().unwrap();
        assert_eq!(t.size(), 8);
        assert!(!t.is_abelian());
        let orders: Vec<u64> = (0..8).map(|a| t.element_order(a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 5);
    }

    #[test]
    fn symmetric_table_matches_factorial() {
        let t = GroupFamily::Symmetric(4).multiplication_table().unwrap();
        assert_eq!(t.size(), 24);
        assert!(!t.is_abelian());
    }

    #[test]
    fn direct_product_orders_multiply() {
        let f = GroupFamily::DirectProduct(
            Box::new(GroupFamily::Dihedral(4)),
            Box::new(GroupFamily::Cyclic(3)),
        );
        let t = f.multiplication_table().unwrap();
        assert_eq!(t.size(), 24);
        assert!(!t.is_abelian());
    }

    /// dihedral(4) × cyclic(2)^6: a nonabelian group of order 512 = 2^9.
    fn order_512_family() -> GroupFamily {
        let mut f = GroupFamily::Dihedral(4);
        for _ in 0..6 {
            f = GroupFamily::DirectProduct(Box::new(f), Box::new(GroupFamily::Cyclic(2)));
        }
        f
    }

    #[test]
    fn order_512_shape() {
        let t = order_512_family().multiplication_table().unwrap();
        assert_eq!(t.size(), 512);
        assert!(!t.is_abelian());
    }

    #[test]
    fn family_parameters_out_of_range_are_rejected() {
        assert!(GroupFamily::Cyclic(0).multiplication_table().is_err());
        assert!(GroupFamily::HeisenbergModP(4).multiplication_table().is_err());
        assert!(GroupFamily::Symmetric(8).multiplication_table().is_err());
        assert!(GroupFamily::Cyclic(MAX_TABLE_ORDER + 1)
            .multiplication_table()
            .is_err());
    }

    #[test]
    fn bad_tables_are_rejected_with_location() {
        // Row 1 repeats an entry.
        let err = MultiplicationTable::new(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(
            err,
            GroupError::NonLatinRow { index: 1, .. } | GroupError::BadTable { .. }
        ));

        // Valid Latin square whose index 0 is not the identity.
        let err = MultiplicationTable::new(vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::BadTable { .. }));

        // Non-square.
        assert!(MultiplicationTable::new(vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn table_json_round_trip() {
        let t = GroupFamily::Cyclic(3).multiplication_table().unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"size":3,"table":[[0,1,2],[1,2,0],[2,0,1]]}"#);
        let back: MultiplicationTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);

        // A structurally valid JSON payload that is not a group is rejected.
        let bad = r#"{"size":2,"table":[[0,1],[1,1]]}"#;
        assert!(serde_json::from_str::<MultiplicationTable>(bad).is_err());
    }

    #[test]
    fn regular_representation_of_cyclic_3_with_fixed_point() {
        let t = GroupFamily::Cyclic(3).multiplication_table().unwrap();
        let g = regular_representation(&t, true).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.order(), 3);
        for e in g.iter().filter(|e| !e.is_identity()) {
            assert_eq!(e.cycle_type().lengths(), &[3, 1]);
            assert_eq!(e.apply(4), 4);
        }
        assert_eq!(g.generators().len(), 1);
    }

    #[test]
    fn regular_representation_of_trivial_group() {
        let t = GroupFamily::Cyclic(1).multiplication_table().unwrap();
        let g = regular_representation(&t, false).unwrap();
        assert_eq!((g.degree(), g.order()), (1, 1));
        let g = regular_representation(&t, true).unwrap();
        assert_eq!((g.degree(), g.order()), (2, 1));
    }

    #[test]
    fn regular_representation_of_klein_four() {
        let klein = GroupFamily::DirectProduct(
            Box::new(GroupFamily::Cyclic(2)),
            Box::new(GroupFamily::Cyclic(2)),
        );
        let t = klein.multiplication_table().unwrap();
        let g = regular_representation(&t, false).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(
            g.iter().filter(|e| !e.is_identity()).count(),
            3
        );
        for e in g.iter().filter(|e| !e.is_identity()) {
            assert_eq!(e.cycle_type().lengths(), &[2, 2]);
        }
    }

    #[test]
    fn regular_representation_cycle_types_follow_element_order() {
        let t = GroupFamily::Cyclic(6).multiplication_table().unwrap();
        let g = regular_representation(&t, false).unwrap();
        // Each element of order o acts with 6/o cycles of length o.
        let mut seen_types: Vec<Vec<u32>> = g
            .iter()
            .map(|e| e.cycle_type().lengths().to_vec())
            .collect();
        seen_types.sort();
        let mut expected = vec![
            vec![1, 1, 1, 1, 1, 1],
            vec![2, 2, 2],
            vec![3, 3],
            vec![3, 3],
            vec![6],
            vec![6],
        ];
        expected.sort();
        assert_eq!(seen_types, expected);
    }

    #[test]
    fn regular_representation_is_fixed_point_free_and_closed() {
        let t = GroupFamily::HeisenbergModP(3).multiplication_table().unwrap();
        let g = regular_representation(&t, false).unwrap();
        assert_eq!(g.order(), 27);
        for e in g.iter().filter(|e| !e.is_identity()) {
            for i in 1..=27 {
                assert_ne!(e.apply(i), i);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = g.elements().choose(&mut rng).unwrap();
            let b = g.elements().choose(&mut rng).unwrap();
            assert!(g.contains(&a.compose(b).unwrap()));
        }
        // Heisenberg needs 2 generators; greedy may use one more.
        assert!(g.generators().len() <= 3);
        let regen = close_generators(27, g.generators(), 100).unwrap();
        assert_eq!(regen.elements(), g.elements());
    }
}
