//! Finite group closure from matrix generators and structural computations:
//! order, center, commutator and Frattini subgroups, minimal generator
//! counts (Burnside basis theorem plus an exhaustive oracle), quotients,
//! generator-augmentation procedures, direct products, and Sylow subgroups.
//!
//! The engine is generic over the element representation.  After closure a
//! group carries its elements in a canonical total order (lexicographic on
//! the serialized canonical form), so "choose an element" steps are
//! deterministic and outputs are reproducible.

use std::collections::HashMap;
use std::hash::Hash;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;

/// An exactly-representable group element with decidable equality.
///
/// Implementations must be invertible matrices (or projective classes of
/// them); `op` may assume both operands live in the same ambient context.
pub trait GroupElement: Clone + Eq + Hash {
    fn op(&self, rhs: &Self) -> Self;
    fn try_inverse(&self) -> Option<Self>;
    /// The identity of the same shape and context as `self`.
    fn identity_like(&self) -> Self;
    /// Deterministic serialized form; lexicographic order on these strings
    /// is the canonical element order.
    fn canon_key(&self) -> String;

    fn inverse(&self) -> Self {
        self.try_inverse().expect("group element must be invertible")
    }
}

impl GroupElement for CycMatrix {
    fn op(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("matching shapes within one group")
    }

    fn try_inverse(&self) -> Option<Self> {
        self.invert().ok()
    }

    fn identity_like(&self) -> Self {
        CycMatrix::identity(self.context(), self.dim())
    }

    fn canon_key(&self) -> String {
        self.canon_str()
    }
}

/// Index-level view of a finite group: elements are `0..size()` and all
/// structure algorithms work through products of indices.  Implemented by
/// enumerated matrix groups, subgroup views, and coset quotients.
pub(crate) trait IndexedGroup {
    fn size(&self) -> usize;
    fn prod(&self, i: usize, j: usize) -> usize;
    fn inv(&self, i: usize) -> usize;
    fn id(&self) -> usize;
    fn gens(&self) -> &[usize];
}

/// A subset of element indices with O(1) membership.
#[derive(Debug, Clone)]
pub(crate) struct Subset {
    pub indices: Vec<usize>,
    pub mask: Vec<bool>,
}

impl Subset {
    fn from_indices(size: usize, mut indices: Vec<usize>) -> Subset {
        indices.sort_unstable();
        indices.dedup();
        let mut mask = vec![false; size];
        for &i in &indices {
            mask[i] = true;
        }
        Subset { indices, mask }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }
}

/// Subgroup generated by the seed indices: breadth-first closure under
/// right multiplication, deterministic because seeds are visited in order.
pub(crate) fn close<G: IndexedGroup + ?Sized>(g: &G, seeds: &[usize]) -> Subset {
    let n = g.size();
    let mut mask = vec![false; n];
    let mut order = Vec::with_capacity(seeds.len() + 1);
    mask[g.id()] = true;
    order.push(g.id());
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(g.id());
    while let Some(x) = queue.pop_front() {
        for &s in seeds {
            let y = g.prod(x, s);
            if !mask[y] {
                mask[y] = true;
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    order.sort_unstable();
    Subset { indices: order, mask }
}

pub(crate) fn element_order<G: IndexedGroup + ?Sized>(g: &G, i: usize) -> u64 {
    let mut cur = i;
    let mut m = 1u64;
    while cur != g.id() {
        cur = g.prod(cur, i);
        m += 1;
    }
    m
}

pub(crate) fn pow_idx<G: IndexedGroup + ?Sized>(g: &G, i: usize, e: u64) -> usize {
    let mut acc = g.id();
    for _ in 0..e {
        acc = g.prod(acc, i);
    }
    acc
}

pub(crate) fn exponent<G: IndexedGroup + ?Sized>(g: &G) -> u64 {
    (0..g.size()).fold(1u64, |acc, i| num_integer::lcm(acc, element_order(g, i)))
}

pub(crate) fn is_abelian<G: IndexedGroup + ?Sized>(g: &G) -> bool {
    let gens = g.gens();
    gens.iter().all(|&a| gens.iter().all(|&b| g.prod(a, b) == g.prod(b, a)))
}

pub(crate) fn is_cyclic<G: IndexedGroup + ?Sized>(g: &G) -> bool {
    (0..g.size()).any(|i| element_order(g, i) as usize == g.size())
}

/// Elements commuting with every generator, hence with the whole group.
pub(crate) fn center_indices<G: IndexedGroup + ?Sized>(g: &G) -> Vec<usize> {
    (0..g.size())
        .filter(|&i| g.gens().iter().all(|&a| g.prod(i, a) == g.prod(a, i)))
        .collect()
}

/// Normal closure of the subgroup generated by the seeds.
pub(crate) fn normal_closure<G: IndexedGroup + ?Sized>(g: &G, seeds: &[usize]) -> Subset {
    let mut seeds: Vec<usize> = seeds.to_vec();
    loop {
        let set = close(g, &seeds);
        let mut new = Vec::new();
        for &x in &set.indices {
            for &a in g.gens() {
                let conj = g.prod(g.prod(a, x), g.inv(a));
                if !set.mask[conj] {
                    new.push(conj);
                }
            }
        }
        if new.is_empty() {
            return set;
        }
        seeds.extend(new);
    }
}

/// The commutator subgroup: normal closure of the pairwise generator
/// commutators.  Equal to the subgroup generated by all commutators [x, y];
/// the all-pairs route is kept as a test oracle.
pub(crate) fn commutator_subgroup<G: IndexedGroup + ?Sized>(g: &G) -> Subset {
    let gens = g.gens();
    let mut seeds = Vec::new();
    for &a in gens {
        for &b in gens {
            seeds.push(commutator_idx(g, a, b));
        }
    }
    normal_closure(g, &seeds)
}

pub(crate) fn commutator_idx<G: IndexedGroup + ?Sized>(g: &G, a: usize, b: usize) -> usize {
    g.prod(g.prod(g.prod(a, b), g.inv(a)), g.inv(b))
}

/// Subgroup generated by all p-th powers.
pub(crate) fn power_subgroup<G: IndexedGroup + ?Sized>(g: &G, p: u64) -> Subset {
    let seeds: Vec<usize> = (0..g.size()).map(|i| pow_idx(g, i, p)).collect();
    close(g, &seeds)
}

fn p_exponent(order: usize, p: u64) -> Option<u32> {
    let mut k = 0u32;
    let mut m = order as u64;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

/// Frattini subgroup of a p-group, computed algebraically as the subgroup
/// generated by commutators and p-th powers.
pub(crate) fn frattini<G: IndexedGroup + ?Sized>(g: &G, p: u64) -> Result<Subset> {
    if p_exponent(g.size(), p).is_none() {
        return Err(Error::NotAPGroup { order: g.size(), p });
    }
    let mut seeds = commutator_subgroup(g).indices;
    seeds.extend(power_subgroup(g, p).indices);
    Ok(close(g, &seeds))
}

/// Independent Frattini oracle: intersect the kernels of all surjective
/// homomorphisms onto Z/p, i.e. all maximal subgroups of a p-group.
/// Assignments of generator images are enumerated exhaustively and checked
/// for homomorphy on every (element, generator) edge.
pub(crate) fn maximal_subgroup_intersection<G: IndexedGroup + ?Sized>(
    g: &G,
    p: u64,
) -> Result<Subset> {
    if p_exponent(g.size(), p).is_none() {
        return Err(Error::NotAPGroup { order: g.size(), p });
    }
    let gens = g.gens();
    let n = g.size();
    let k = gens.len();
    let mut intersection = vec![true; n];
    let total = (p as u128).pow(k as u32);
    for code in 1..total {
        let mut a = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            a.push((c % p as u128) as u64);
            c /= p as u128;
        }
        // Propagate a candidate hom from generator images over the Cayley
        // graph, then verify it on every generator edge.
        let mut f: Vec<Option<u64>> = vec![None; n];
        f[g.id()] = Some(0);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(g.id());
        while let Some(x) = queue.pop_front() {
            let fx = f[x].unwrap();
            for (slot, &gen) in gens.iter().enumerate() {
                let y = g.prod(x, gen);
                if f[y].is_none() {
                    f[y] = Some((fx + a[slot]) % p);
                    queue.push_back(y);
                }
            }
        }
        let is_hom = (0..n).all(|x| {
            let fx = f[x].unwrap();
            gens.iter()
                .enumerate()
                .all(|(slot, &gen)| f[g.prod(x, gen)].unwrap() == (fx + a[slot]) % p)
        });
        if is_hom {
            for x in 0..n {
                if f[x].unwrap() != 0 {
                    intersection[x] = false;
                }
            }
        }
    }
    let indices: Vec<usize> = (0..n).filter(|&i| intersection[i]).collect();
    Ok(Subset::from_indices(n, indices))
}

/// Burnside basis theorem: d(G) = log_p [G : Frattini(G)].
pub(crate) fn min_generators<G: IndexedGroup + ?Sized>(g: &G, p: u64) -> Result<u32> {
    if g.size() == 1 {
        return Ok(0);
    }
    let phi = frattini(g, p)?;
    let quotient_order = g.size() / phi.len();
    Ok(p_exponent(quotient_order, p).expect("Frattini quotient of a p-group is a p-group"))
}

/// A canonical minimal generating set of a p-group: walk elements in
/// canonical order and keep those outside the subgroup generated so far
/// together with the Frattini subgroup.
pub(crate) fn minimal_generating_set<G: IndexedGroup + ?Sized>(
    g: &G,
    p: u64,
) -> Result<Vec<usize>> {
    let phi = frattini(g, p)?;
    let mut seeds = phi.indices.clone();
    let mut current = close(g, &seeds);
    let mut gens = Vec::new();
    while current.len() < g.size() {
        let next = (0..g.size()).find(|&i| !current.contains(i)).expect("proper subgroup");
        gens.push(next);
        seeds.push(next);
        current = close(g, &seeds);
    }
    debug_assert_eq!(close(g, &gens).len(), g.size());
    Ok(gens)
}

/// Any generating set (not necessarily minimal): greedy canonical walk.
pub(crate) fn greedy_generating_set<G: IndexedGroup + ?Sized>(g: &G) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = close(g, &gens);
    while current.len() < g.size() {
        let next = (0..g.size()).find(|&i| !current.contains(i)).expect("proper subgroup");
        gens.push(next);
        current = close(g, &gens);
    }
    gens
}

/// Exhaustive smallest-generating-set search.  Subsets are enumerated in
/// increasing canonical order (so each unordered subset is visited once) and
/// a candidate already inside the subgroup generated by the chosen prefix is
/// skipped, since it cannot enlarge the closure.
pub(crate) fn min_generators_bruteforce<G: IndexedGroup + ?Sized>(
    g: &G,
    cap: usize,
) -> Result<u32> {
    let n = g.size();
    if n > cap {
        return Err(Error::BruteForceCapExceeded { order: n, cap });
    }
    if n == 1 {
        return Ok(0);
    }
    fn dfs<G: IndexedGroup + ?Sized>(
        g: &G,
        remaining: u32,
        start: usize,
        chosen: &mut Vec<usize>,
        current: &Subset,
    ) -> bool {
        for cand in start..g.size() {
            if current.contains(cand) {
                continue;
            }
            chosen.push(cand);
            let next = close(g, chosen);
            let full = next.len() == g.size();
            if full || (remaining > 1 && dfs(g, remaining - 1, cand + 1, chosen, &next)) {
                chosen.pop();
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut k = 1u32;
    loop {
        let mut chosen = Vec::new();
        let current = close(g, &chosen);
        if dfs(g, k, 0, &mut chosen, &current) {
            return Ok(k);
        }
        k += 1;
        assert!(
            (1u128 << k) <= 2 * n as u128,
            "every group of order n is generated by log2(n) elements"
        );
    }
}

struct Table {
    n: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
}

/// A fully enumerated finite matrix group with canonical element order.
pub struct FiniteMatrixGroup<E: GroupElement> {
    generators: Vec<E>,
    elements: Vec<E>,
    index: HashMap<E, usize>,
    gen_indices: Vec<usize>,
    identity_index: usize,
    table: Option<Table>,
}

impl<E: GroupElement> IndexedGroup for FiniteMatrixGroup<E> {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn prod(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t.mult[i * t.n + j] as usize,
            None => {
                let w = self.elements[i].op(&self.elements[j]);
                *self.index.get(&w).expect("product stays inside the enumerated closure")
            }
        }
    }

    fn inv(&self, i: usize) -> usize {
        match &self.table {
            Some(t) => t.inv[i] as usize,
            None => {
                let w = self.elements[i].inverse();
                *self.index.get(&w).expect("inverse stays inside the enumerated closure")
            }
        }
    }

    fn id(&self) -> usize {
        self.identity_index
    }

    fn gens(&self) -> &[usize] {
        &self.gen_indices
    }
}

impl<E: GroupElement> FiniteMatrixGroup<E> {
    /// Breadth-first closure of the generators under multiplication.
    ///
    /// The element set is independent of generator order; the final element
    /// numbering is the canonical (serialized-form) order.
    pub fn closure(generators: &[E], caps: &Caps) -> Result<FiniteMatrixGroup<E>> {
        if generators.is_empty() {
            return Err(Error::Validation("a group needs at least one generator".into()));
        }
        for g in generators {
            if g.try_inverse().is_none() {
                return Err(Error::NotInvertible);
            }
        }
        let identity = generators[0].identity_like();
        let mut distinct: Vec<E> = Vec::new();
        for g in generators {
            if *g != identity && !distinct.contains(g) {
                distinct.push(g.clone());
            }
        }

        let mut bfs: Vec<E> = vec![identity.clone()];
        let mut pos: HashMap<E, usize> = HashMap::new();
        pos.insert(identity.clone(), 0);
        // decomp[i] = (parent bfs index, generator slot): element i is
        // parent * generator.
        let mut decomp: Vec<Option<(usize, usize)>> = vec![None];
        let mut head = 0;
        while head < bfs.len() {
            let parent = bfs[head].clone();
            for (slot, g) in distinct.iter().enumerate() {
                let w = parent.op(g);
                if !pos.contains_key(&w) {
                    if bfs.len() >= caps.max_group_order {
                        return Err(Error::ClosureCapExceeded { cap: caps.max_group_order });
                    }
                    pos.insert(w.clone(), bfs.len());
                    bfs.push(w);
                    decomp.push(Some((head, slot)));
                }
            }
            head += 1;
        }

        // Canonical renumbering by serialized form.
        let keys: Vec<String> = bfs.iter().map(|e| e.canon_key()).collect();
        let mut perm: Vec<usize> = (0..bfs.len()).collect();
        perm.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut rank = vec![0usize; bfs.len()];
        for (r, &old) in perm.iter().enumerate() {
            rank[old] = r;
        }
        let mut elements: Vec<Option<E>> = vec![None; bfs.len()];
        for (old, e) in bfs.into_iter().enumerate() {
            elements[rank[old]] = Some(e);
        }
        let elements: Vec<E> = elements.into_iter().map(|e| e.unwrap()).collect();
        let index: HashMap<E, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let identity_index = *index.get(&identity).unwrap();
        let gen_indices: Vec<usize> = distinct.iter().map(|g| *index.get(g).unwrap()).collect();

        let table = if elements.len() <= caps.table_cap {
            let n = elements.len();
            // One permutation per generator; every other column then follows
            // from the BFS decomposition without further matrix products.
            let gen_perm: Vec<Vec<u32>> = distinct
                .iter()
                .map(|g| {
                    (0..n).map(|i| *index.get(&elements[i].op(g)).unwrap() as u32).collect()
                })
                .collect();
            let mut mult = vec![0u32; n * n];
            for i in 0..n {
                mult[i * n + identity_index] = i as u32;
            }
            // Fill columns in BFS discovery order (ascending original
            // index) so parent columns are always filled first.
            for old in 0..n {
                let Some((old_parent, slot)) = decomp[old] else {
                    continue;
                };
                let col = rank[old];
                let parent = rank[old_parent];
                let gp = &gen_perm[slot];
                for i in 0..n {
                    mult[i * n + col] = gp[mult[i * n + parent] as usize];
                }
            }
            let mut inv = vec![0u32; n];
            for i in 0..n {
                let row = &mult[i * n..(i + 1) * n];
                inv[i] =
                    row.iter().position(|&v| v as usize == identity_index).unwrap() as u32;
            }
            Some(Table { n, mult, inv })
        } else {
            None
        };

        Ok(FiniteMatrixGroup {
            generators: generators.to_vec(),
            elements,
            index,
            gen_indices,
            identity_index,
            table,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    pub fn is_abelian(&self) -> bool {
        is_abelian(self)
    }

    pub fn is_cyclic(&self) -> bool {
        is_cyclic(self)
    }

    pub fn exponent(&self) -> u64 {
        exponent(self)
    }

    pub fn element_order_at(&self, i: usize) -> u64 {
        element_order(self, i)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        p_exponent(self.order(), p).is_some()
    }

    /// The unique prime p with |G| a power of p, for nontrivial groups of
    /// prime-power order.
    pub fn p_group_prime(&self) -> Option<u64> {
        let n = self.order();
        if n == 1 {
            return None;
        }
        let mut m = n as u64;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                while m % p == 0 {
                    m /= p;
                }
                return (m == 1).then_some(p);
            }
            p += 1;
        }
        Some(m)
    }

    fn handle(&self, set: Subset) -> SubgroupHandle<'_, E> {
        SubgroupHandle { group: self, set }
    }

    pub fn center(&self) -> SubgroupHandle<'_, E> {
        let indices = center_indices(self);
        self.handle(Subset::from_indices(self.order(), indices))
    }

    pub fn commutator_subgroup(&self) -> SubgroupHandle<'_, E> {
        let set = commutator_subgroup(self);
        self.handle(set)
    }

    pub fn power_subgroup(&self, p: u64) -> SubgroupHandle<'_, E> {
        let set = power_subgroup(self, p);
        self.handle(set)
    }

    pub fn frattini(&self, p: u64) -> Result<SubgroupHandle<'_, E>> {
        Ok(self.handle(frattini(self, p)?))
    }

    /// Second, independent Frattini route through all maximal subgroups.
    pub fn frattini_by_maximal_intersection(&self, p: u64) -> Result<SubgroupHandle<'_, E>> {
        Ok(self.handle(maximal_subgroup_intersection(self, p)?))
    }

    pub fn min_generators(&self, p: u64) -> Result<u32> {
        min_generators(self, p)
    }

    pub fn min_generators_bruteforce(&self, caps: &Caps) -> Result<u32> {
        min_generators_bruteforce(self, caps.brute_force_cap)
    }

    /// Canonical minimal generating set of a p-group.
    pub fn minimal_generating_set(&self, p: u64) -> Result<Vec<E>> {
        Ok(minimal_generating_set(self, p)?
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect())
    }

    pub fn subgroup_generated(&self, elems: &[E]) -> Result<SubgroupHandle<'_, E>> {
        let seeds = self.indices_of(elems)?;
        Ok(self.handle(close(self, &seeds)))
    }

    fn indices_of(&self, elems: &[E]) -> Result<Vec<usize>> {
        elems
            .iter()
            .map(|e| {
                self.index_of(e).ok_or_else(|| {
                    Error::NotASubset("element does not belong to the ambient group".into())
                })
            })
            .collect()
    }

    pub fn full_subgroup(&self) -> SubgroupHandle<'_, E> {
        self.handle(Subset::from_indices(self.order(), (0..self.order()).collect()))
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle<'_, E> {
        self.handle(Subset::from_indices(self.order(), vec![self.identity_index]))
    }

    /// Grow a generating set of G from generators of a subgroup by greedily
    /// adjoining the canonically smallest element outside the subgroup
    /// generated so far.
    pub fn augment_generators(&self, subgroup_gens: &[E]) -> Result<Vec<E>> {
        let mut seeds = self.indices_of(subgroup_gens)?;
        let mut out: Vec<E> = subgroup_gens.to_vec();
        let mut current = close(self, &seeds);
        while current.len() < self.order() {
            let next = (0..self.order()).find(|&i| !current.contains(i)).unwrap();
            seeds.push(next);
            out.push(self.elements[next].clone());
            current = close(self, &seeds);
        }
        Ok(out)
    }

    /// Generators of G from a normal subgroup N: generators of N plus one
    /// preimage for each generator of G/N.  Uses minimal generating sets on
    /// both sides when the orders are prime powers.
    pub fn extension_generators(&self, normal: &SubgroupHandle<'_, E>) -> Result<Vec<E>> {
        if !normal.is_normal() {
            return Err(Error::NotNormal);
        }
        let mut out = Vec::new();
        let view = normal.as_view();
        for local in best_generating_set(&view)? {
            out.push(self.elements[view.local[local]].clone());
        }
        let quot = self.quotient(normal)?;
        for coset in best_generating_set(&quot)? {
            out.push(self.elements[quot.reps[coset]].clone());
        }
        Ok(out)
    }

    pub fn quotient(&self, normal: &SubgroupHandle<'_, E>) -> Result<QuotientGroup> {
        if !normal.is_normal() {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of: Vec<u32> = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for i in 0..n {
            if coset_of[i] == u32::MAX {
                let c = reps.len() as u32;
                reps.push(i);
                for &h in &normal.set.indices {
                    coset_of[self.prod(i, h)] = c;
                }
            }
        }
        let m = reps.len();
        let mut mult = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                mult[a * m + b] = coset_of[self.prod(reps[a], reps[b])];
            }
        }
        let id_coset = coset_of[self.identity_index] as usize;
        let mut inv = vec![0u32; m];
        for a in 0..m {
            inv[a] = mult[a * m..(a + 1) * m]
                .iter()
                .position(|&v| v as usize == id_coset)
                .unwrap() as u32;
        }
        let mut gen_cosets: Vec<usize> = self
            .gen_indices
            .iter()
            .map(|&g| coset_of[g] as usize)
            .filter(|&c| c != id_coset)
            .collect();
        gen_cosets.dedup();
        Ok(QuotientGroup { reps, coset_of, mult, inv, id_coset, gen_cosets })
    }

    /// A Sylow p-subgroup, grown deterministically: starting from the
    /// trivial subgroup, repeatedly adjoin the canonically smallest
    /// normalizing element whose p-th power falls back into the subgroup.
    pub fn sylow_subgroup(&self, p: u64) -> Result<SubgroupHandle<'_, E>> {
        if p < 2 || p_exponent(p as usize, p) != Some(1) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        let mut target = 1usize;
        let mut m = self.order();
        while m % p as usize == 0 {
            target *= p as usize;
            m /= p as usize;
        }
        let mut seeds: Vec<usize> = Vec::new();
        let mut current = close(self, &seeds);
        while current.len() < target {
            let cand = (0..self.order())
                .find(|&g| {
                    !current.contains(g)
                        && current.contains(pow_idx(self, g, p))
                        && current
                            .indices
                            .iter()
                            .all(|&s| current.contains(self.prod(self.prod(g, s), self.inv(g))))
                })
                .expect("a p-subgroup below Sylow order has a strictly larger normalizer");
            seeds.push(cand);
            current = close(self, &seeds);
        }
        Ok(self.handle(current))
    }
}

/// A subgroup of an enumerated group: the ambient group plus a closed
/// element subset.
pub struct SubgroupHandle<'g, E: GroupElement> {
    group: &'g FiniteMatrixGroup<E>,
    set: Subset,
}

impl<'g, E: GroupElement> SubgroupHandle<'g, E> {
    pub fn order(&self) -> usize {
        self.set.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.set.indices
    }

    pub fn elements(&self) -> impl Iterator<Item = &'g E> + '_ {
        self.set.indices.iter().map(|&i| self.group.element(i))
    }

    pub fn contains(&self, e: &E) -> bool {
        self.group.index_of(e).map(|i| self.set.contains(i)).unwrap_or(false)
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.set.contains(i)
    }

    /// Index [G : H].
    pub fn index_in_group(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn is_normal(&self) -> bool {
        self.group.gens().iter().all(|&g| {
            self.set.indices.iter().all(|&s| {
                self.set.contains(self.group.prod(self.group.prod(g, s), self.group.inv(g)))
            })
        })
    }

    /// Order of G/H when H is normal.
    pub fn quotient_order(&self) -> Result<usize> {
        if !self.is_normal() {
            return Err(Error::NotNormal);
        }
        Ok(self.index_in_group())
    }

    pub fn same_set_as(&self, other: &SubgroupHandle<'_, E>) -> bool {
        self.set.indices == other.set.indices
    }

    /// Coset representatives in canonical order (each coset represented by
    /// its smallest element).
    pub fn coset_representatives(&self) -> Result<Vec<&'g E>> {
        let quot = self.group.quotient(self)?;
        Ok(quot.reps.iter().map(|&i| self.group.element(i)).collect())
    }

    pub(crate) fn as_view(&self) -> SubgroupView<'_, FiniteMatrixGroup<E>> {
        SubgroupView::new(self.group, &self.set)
    }

    /// Minimal generator count of the subgroup as a group in its own right.
    pub fn min_generators(&self, p: u64) -> Result<u32> {
        min_generators(&self.as_view(), p)
    }

    pub fn exponent(&self) -> u64 {
        exponent(&self.as_view())
    }

    pub fn is_abelian(&self) -> bool {
        is_abelian(&self.as_view())
    }

    pub fn is_cyclic(&self) -> bool {
        is_cyclic(&self.as_view())
    }
}

/// Re-indexed view of a closed subset as a group of its own.
pub(crate) struct SubgroupView<'g, G: IndexedGroup> {
    parent: &'g G,
    pub local: Vec<usize>,
    pos: HashMap<usize, usize>,
    gens: Vec<usize>,
}

impl<'g, G: IndexedGroup> SubgroupView<'g, G> {
    fn new(parent: &'g G, set: &Subset) -> SubgroupView<'g, G> {
        let local = set.indices.clone();
        let pos: HashMap<usize, usize> =
            local.iter().enumerate().map(|(l, &a)| (a, l)).collect();
        let mut view = SubgroupView { parent, local, pos, gens: Vec::new() };
        view.gens = greedy_generating_set(&view);
        view
    }
}

impl<'g, G: IndexedGroup> IndexedGroup for SubgroupView<'g, G> {
    fn size(&self) -> usize {
        self.local.len()
    }

    fn prod(&self, i: usize, j: usize) -> usize {
        self.pos[&self.parent.prod(self.local[i], self.local[j])]
    }

    fn inv(&self, i: usize) -> usize {
        self.pos[&self.parent.inv(self.local[i])]
    }

    fn id(&self) -> usize {
        self.pos[&self.parent.id()]
    }

    fn gens(&self) -> &[usize] {
        &self.gens
    }
}

/// G/N as an abstract group on coset representatives; quotients of matrix
/// groups need not be matrix groups of the same dimension, so they are
/// represented by coset tables only.
pub struct QuotientGroup {
    /// Ambient index of the canonical (smallest) representative per coset.
    pub reps: Vec<usize>,
    coset_of: Vec<u32>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    id_coset: usize,
    gen_cosets: Vec<usize>,
}

impl IndexedGroup for QuotientGroup {
    fn size(&self) -> usize {
        self.reps.len()
    }

    fn prod(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.reps.len() + j] as usize
    }

    fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    fn id(&self) -> usize {
        self.id_coset
    }

    fn gens(&self) -> &[usize] {
        &self.gen_cosets
    }
}

impl QuotientGroup {
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_of_index(&self, ambient: usize) -> usize {
        self.coset_of[ambient] as usize
    }

    pub fn min_generators(&self, p: u64) -> Result<u32> {
        min_generators(self, p)
    }

    pub fn exponent(&self) -> u64 {
        exponent(self)
    }

    pub fn is_abelian(&self) -> bool {
        is_abelian(self)
    }
}

/// Minimal generating set when the order is a prime power, greedy otherwise.
fn best_generating_set<G: IndexedGroup + ?Sized>(g: &G) -> Result<Vec<usize>> {
    if g.size() == 1 {
        return Ok(Vec::new());
    }
    let mut m = g.size() as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 {
                minimal_generating_set(g, p)
            } else {
                Ok(greedy_generating_set(g))
            };
        }
        p += 1;
    }
    minimal_generating_set(g, m)
}

/// Block-diagonal direct product of two cyclotomic matrix groups; contexts
/// are merged by embedding into the lcm root order.
pub fn direct_product(
    a: &FiniteMatrixGroup<CycMatrix>,
    b: &FiniteMatrixGroup<CycMatrix>,
    caps: &Caps,
) -> Result<FiniteMatrixGroup<CycMatrix>> {
    let ia = a.generators()[0].identity_like();
    let ib = b.generators()[0].identity_like();
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(CycMatrix::block_diag(g, &ib)?);
    }
    for h in b.generators() {
        gens.push(CycMatrix::block_diag(&ia, h)?);
    }
    FiniteMatrixGroup::closure(&gens, caps)
}
