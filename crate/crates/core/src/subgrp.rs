//! Finite groups as explicit multiplication tables: closure checks,
//! the full subgroup lattice, normality, quotients, and the
//! order/element-order signatures used to compare truncation levels
//! against known abelian models.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;

/// Ceiling on how many subgroups the lattice walk may collect.
pub const SUBGROUP_CAP: usize = 2000;

const ASSOC_EXHAUSTIVE_LIMIT: u128 = 1_000_000;
const ASSOC_SAMPLES: usize = 10_000;

/// A finite group stored as a flat multiplication table.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    labels: Vec<String>,
}

impl GroupTable {
    /// Build from a closed list of distinct elements. Fails with a
    /// verification error naming the offending pair when the list is not
    /// closed, lacks an identity or an inverse, or breaks associativity.
    pub fn from_elements<T, M, L>(elems: &[T], mul: M, label: L) -> Result<GroupTable>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> Result<T>,
        L: Fn(&T) -> String,
    {
        if elems.is_empty() {
            return Err(Error::BadSpec("a group needs at least one element".into()));
        }
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::Verification(format!(
                    "duplicate element at position {i}"
                )));
            }
        }
        let order = elems.len();
        let labels: Vec<String> = elems.iter().map(&label).collect();
        let mut table = vec![0usize; order * order];
        for i in 0..order {
            for j in 0..order {
                let prod = mul(&elems[i], &elems[j])?;
                match index.get(&prod) {
                    Some(&k) => table[i * order + j] = k,
                    None => {
                        return Err(Error::Verification(format!(
                            "not closed: {} * {} falls outside the element list",
                            labels[i], labels[j]
                        )))
                    }
                }
            }
        }
        GroupTable::from_raw(table, labels)
    }

    /// Build from a precomputed flat table (row i, column j at i*order+j).
    pub fn from_raw(mul: Vec<usize>, labels: Vec<String>) -> Result<GroupTable> {
        let order = labels.len();
        if mul.len() != order * order || order == 0 {
            return Err(Error::BadSpec("table size must be order squared".into()));
        }
        if mul.iter().any(|&k| k >= order) {
            return Err(Error::Verification("table entry out of range".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] == x && mul[x * order + e] == x))
            .ok_or_else(|| Error::Verification("no identity element".into()))?;
        let mut inv = vec![usize::MAX; order];
        for i in 0..order {
            match (0..order).find(|&j| mul[i * order + j] == identity && mul[j * order + i] == identity)
            {
                Some(j) => inv[i] = j,
                None => {
                    return Err(Error::Verification(format!(
                        "{} has no inverse",
                        labels[i]
                    )))
                }
            }
        }
        let g = GroupTable { order, mul, identity, inv, labels };
        g.verify_associativity()?;
        Ok(g)
    }

    fn verify_associativity(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if (n as u128).pow(3) <= ASSOC_EXHAUSTIVE_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::Verification(format!(
                                "associativity fails at ({}, {}, {})",
                                self.labels[a], self.labels[b], self.labels[c]
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha20Rng::seed_from_u64(0);
            for _ in 0..ASSOC_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return Err(Error::Verification(format!(
                        "associativity fails at ({}, {}, {})",
                        self.labels[a], self.labels[b], self.labels[c]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order + j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (i..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Multiplicative order of element i.
    pub fn element_order(&self, i: usize) -> u64 {
        let mut k = 1u64;
        let mut x = i;
        while x != self.identity {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// How many elements there are of each multiplicative order.
    pub fn order_profile(&self) -> BTreeMap<u64, usize> {
        let mut profile = BTreeMap::new();
        for i in 0..self.order {
            *profile.entry(self.element_order(i)).or_insert(0) += 1;
        }
        profile
    }

    /// Subgroup generated by the given element indices, as a sorted list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut members = vec![self.identity];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &g in gens {
            if !seen[g] {
                seen[g] = true;
                members.push(g);
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if !seen[y] {
                        seen[y] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Every subgroup, found by saturating joins of cyclic subgroups.
    /// Sorted by (order, members); errors past [`SUBGROUP_CAP`].
    pub fn all_subgroups(&self) -> Result<Vec<Vec<usize>>> {
        let mut subs: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..self.order {
            subs.insert(self.generated(&[i]));
        }
        loop {
            let snapshot: Vec<Vec<usize>> = subs.iter().cloned().collect();
            let mut grew = false;
            for i in 0..snapshot.len() {
                for j in i + 1..snapshot.len() {
                    let mut gens = snapshot[i].clone();
                    gens.extend_from_slice(&snapshot[j]);
                    let join = self.generated(&gens);
                    if subs.insert(join) {
                        grew = true;
                        if subs.len() > SUBGROUP_CAP {
                            return Err(Error::CapExceeded {
                                needed: subs.len() as u128,
                                cap: SUBGROUP_CAP as u128,
                            });
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = subs.into_iter().collect();
        out.sort_by_key(|h| (h.len(), h.clone()));
        Ok(out)
    }

    /// First (g, h) with g·h·g⁻¹ outside H, if any.
    pub fn normality_violation(&self, members: &[usize]) -> Option<(usize, usize)> {
        let set: HashSet<usize> = members.iter().copied().collect();
        for g in 0..self.order {
            for &h in members {
                let conj = self.mul(self.mul(g, h), self.inv(g));
                if !set.contains(&conj) {
                    return Some((g, h));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        self.normality_violation(members).is_none()
    }

    /// Quotient by a normal subgroup: the coset group and the projection
    /// sending each element index to its coset index.
    pub fn quotient(&self, members: &[usize]) -> Result<(GroupTable, Vec<usize>)> {
        if let Some((g, h)) = self.normality_violation(members) {
            return Err(Error::Verification(format!(
                "subgroup is not normal: conjugating {} by {} leaves it",
                self.labels[h], self.labels[g]
            )));
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if proj[g] != usize::MAX {
                continue;
            }
            let coset_idx = reps.len();
            for &h in members {
                proj[self.mul(g, h)] = coset_idx;
            }
            reps.push(g);
        }
        let k = reps.len();
        let mut mul = vec![0usize; k * k];
        for (i, &ri) in reps.iter().enumerate() {
            for (j, &rj) in reps.iter().enumerate() {
                mul[i * k + j] = proj[self.mul(ri, rj)];
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", self.labels[r])).collect();
        let table = GroupTable::from_raw(mul, labels)?;
        Ok((table, proj))
    }
}

/// Close a seed set under products (BFS); errors past `cap` elements.
pub fn closure<T, M>(seeds: &[T], mul: M, cap: usize) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash,
    M: Fn(&T, &T) -> Result<T>,
{
    if seeds.is_empty() {
        return Err(Error::BadSpec("closure needs at least one seed".into()));
    }
    let mut seen: HashSet<T> = HashSet::new();
    let mut out: Vec<T> = Vec::new();
    let mut queue: VecDeque<T> = VecDeque::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            out.push(s.clone());
            queue.push_back(s.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        let snapshot = out.clone();
        for y in &snapshot {
            for z in [mul(&x, y)?, mul(y, &x)?] {
                if seen.insert(z.clone()) {
                    if out.len() + 1 > cap {
                        return Err(Error::CapExceeded {
                            needed: out.len() as u128 + 1,
                            cap: cap as u128,
                        });
                    }
                    out.push(z.clone());
                    queue.push_back(z);
                }
            }
        }
    }
    Ok(out)
}

/// Cyclic group of order k with elements labelled 0..k-1.
pub fn cyclic(k: usize) -> GroupTable {
    let mul = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i + j) % k))
        .collect();
    let labels = (0..k).map(|i| i.to_string()).collect();
    GroupTable::from_raw(mul, labels).expect("cyclic tables are groups")
}

/// Direct product with pairs ordered (a-index major).
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mul = vec![0usize; n * n];
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let x = i1 * nb + j1;
                    let y = i2 * nb + j2;
                    mul[x * n + y] = a.mul(i1, i2) * nb + b.mul(j1, j2);
                }
            }
        }
    }
    let labels = (0..na)
        .flat_map(|i| (0..nb).map(move |j| (i, j)))
        .map(|(i, j)| format!("({},{})", a.label(i), b.label(j)))
        .collect();
    GroupTable::from_raw(mul, labels).expect("product tables are groups")
}

/// Order plus element-order profile; a cheap isomorphism-sensitive
/// signature for comparing against reference abelian groups.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LevelSignature {
    pub order: usize,
    pub profile: BTreeMap<u64, usize>,
}

pub fn level_signature(table: &GroupTable) -> LevelSignature {
    LevelSignature { order: table.order(), profile: table.order_profile() }
}

/// One subgroup in a lattice report; members are element indices.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupInfo {
    pub order: usize,
    pub members: Vec<usize>,
    pub normal: bool,
}

/// The full lattice with normality flags.
pub fn subgroup_report(table: &GroupTable) -> Result<Vec<SubgroupInfo>> {
    let subs = table.all_subgroups()?;
    Ok(subs
        .iter()
        .map(|h| SubgroupInfo {
            order: h.len(),
            members: h.clone(),
            normal: table.is_normal(h),
        })
        .collect())
}

/// The distinct (order, element-order profile) signatures contributed
/// by the subgroups of one quotient level.
pub fn prosub_level(table: &GroupTable) -> Result<std::collections::BTreeSet<LevelSignature>> {
    let subs = table.all_subgroups()?;
    let mut out = std::collections::BTreeSet::new();
    for members in subs {
        let mut profile = BTreeMap::new();
        for &i in &members {
            *profile.entry(table.element_order(i)).or_insert(0) += 1;
        }
        out.insert(LevelSignature { order: members.len(), profile });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> GroupTable {
        direct_product(&cyclic(2), &cyclic(2))
    }

    #[test]
    fn cyclic_basics() {
        let c4 = cyclic(4);
        assert_eq!(c4.order(), 4);
        assert_eq!(c4.identity(), 0);
        assert_eq!(c4.mul(3, 2), 1);
        assert_eq!(c4.inv(1), 3);
        assert_eq!(c4.element_order(1), 4);
        assert_eq!(c4.element_order(2), 2);
        assert!(c4.is_abelian());
    }

    #[test]
    fn profile_distinguishes_the_three_order8_abelians() {
        let z8 = level_signature(&cyclic(8));
        let z4z2 = level_signature(&direct_product(&cyclic(4), &cyclic(2)));
        let z2cube = level_signature(&direct_product(&klein(), &cyclic(2)));
        assert_eq!(z8.profile, [(1, 1), (2, 1), (4, 2), (8, 4)].into_iter().collect());
        assert_eq!(z4z2.profile, [(1, 1), (2, 3), (4, 4)].into_iter().collect());
        assert_eq!(z2cube.profile, [(1, 1), (2, 7)].into_iter().collect());
        assert_ne!(z8, z4z2);
        assert_ne!(z4z2, z2cube);
    }

    #[test]
    fn non_closed_list_is_rejected_with_pair() {
        // {0, 1} inside Z/4 is not closed: 1+1 = 2 escapes
        let err = GroupTable::from_elements(
            &[0u32, 1],
            |a, b| Ok((a + b) % 4),
            |x| x.to_string(),
        )
        .unwrap_err();
        match err {
            Error::Verification(msg) => assert!(msg.contains("1 * 1")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn missing_identity_and_inverse_are_rejected() {
        // left-zero semigroup on two elements: x*y = x
        let err = GroupTable::from_raw(vec![0, 0, 1, 1], vec!["a".into(), "b".into()]).unwrap_err();
        assert!(matches!(err, Error::Verification(_)));
    }

    #[test]
    fn associativity_violation_is_caught() {
        // commutative magma with identity and inverses that fails
        // associativity: subtraction-flavoured table on Z/3
        // x*y = x - y is not associative but 0 is only a right identity;
        // use an explicitly cooked table instead
        let mul = vec![
            0, 1, 2, //
            1, 0, 0, //
            2, 0, 1,
        ];
        let err = GroupTable::from_raw(mul, vec!["e".into(), "a".into(), "b".into()]).unwrap_err();
        assert!(matches!(err, Error::Verification(_)));
    }

    #[test]
    fn subgroup_lattice_of_z4z2() {
        let g = direct_product(&cyclic(4), &cyclic(2));
        let subs = g.all_subgroups().unwrap();
        assert_eq!(subs.len(), 8);
        let orders: Vec<usize> = subs.iter().map(|h| h.len()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 4, 4, 4, 8]);
        let index2 = subs.iter().filter(|h| h.len() == 4).count();
        assert_eq!(index2, 3);
        assert!(subs.iter().all(|h| g.is_normal(h)));
        assert!(subs.iter().all(|h| 8 % h.len() == 0));
    }

    #[test]
    fn trivial_group_has_one_subgroup() {
        let t = cyclic(1);
        assert_eq!(t.all_subgroups().unwrap(), vec![vec![0]]);
    }

    #[test]
    fn s3_subgroups_and_normality() {
        // symmetric group on 3 letters as permutation composition
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let g = GroupTable::from_elements(
            &perms,
            |a, b| Ok([a[b[0]], a[b[1]], a[b[2]]]),
            |p| format!("{p:?}"),
        )
        .unwrap();
        assert!(!g.is_abelian());
        let subs = g.all_subgroups().unwrap();
        assert_eq!(subs.len(), 6);
        let normal_orders: Vec<usize> = subs
            .iter()
            .filter(|h| g.is_normal(h))
            .map(|h| h.len())
            .collect();
        assert_eq!(normal_orders, vec![1, 3, 6]);
        // quotient by the 3-cycle subgroup is Z/2
        let a3 = subs.iter().find(|h| h.len() == 3).unwrap();
        let (q, proj) = g.quotient(a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.iter().filter(|&&c| c == 0).count(), 3);
        // quotient by an order-2 subgroup must fail with a violating pair
        let h2 = subs.iter().find(|h| h.len() == 2).unwrap();
        let err = g.quotient(h2).unwrap_err();
        assert!(matches!(err, Error::Verification(_)));
    }

    #[test]
    fn quotient_of_z4_by_z2() {
        let c4 = cyclic(4);
        let (q, proj) = c4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
    }

    #[test]
    fn closure_generates_whole_cyclic_group() {
        let got = closure(&[1u32], |a, b| Ok((a + b) % 6), 100).unwrap();
        let mut sorted = got.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4, 5]);
        let err = closure(&[1u32], |a, b| Ok(a + b), 10).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        assert!(closure::<u32, _>(&[], |a, b| Ok(a + b), 10).is_err());
    }

    #[test]
    fn report_serializes_member_indices() {
        let g = klein();
        let report = subgroup_report(&g).unwrap();
        assert_eq!(report.len(), 5);
        assert!(report.iter().all(|s| s.normal));
        let v = serde_json::to_value(&report[0]).unwrap();
        assert_eq!(v["order"], 1);
        assert_eq!(v["members"], serde_json::json!([0]));
        assert_eq!(v["normal"], true);
    }

    #[test]
    fn prosub_signatures() {
        // S_3 contributes signatures of orders {1, 2, 3, 6}
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let g = GroupTable::from_elements(
            &perms,
            |a, b| Ok([a[b[0]], a[b[1]], a[b[2]]]),
            |p| format!("{p:?}"),
        )
        .unwrap();
        let sigs = prosub_level(&g).unwrap();
        let orders: Vec<usize> = sigs.iter().map(|s| s.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(prosub_level(&cyclic(1)).unwrap().len(), 1);
        // Z/4 x Z/2 contributes 5 distinct signatures from its 8
        // subgroups; the two order-4 types (cyclic and Klein) differ
        let z4z2 = direct_product(&cyclic(4), &cyclic(2));
        let sigs = prosub_level(&z4z2).unwrap();
        let orders: Vec<usize> = sigs.iter().map(|s| s.order).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 8]);
    }
}
