//! Finite monoids given by Cayley tables, homomorphisms between them, and
//! the monoid-level constructions: isomorphism search, normal submonoids
//! with their quotients, semidirect products, and the concentration monoid
//! of a category with concentration.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::category::{FinCategory, Functor, MorphismId};
use crate::concentration::{is_concentration_preserving, require_concentration, ClassProducts, MorphismPartition, Outcome};
use crate::error::{Error, Result};

/// Largest order accepted by [`find_isomorphism`].
pub const ISO_SIZE_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMonoid {
    labels: Vec<String>,
    // row-major: table[a * n + b] = a·b
    table: Vec<usize>,
    identity: usize,
    is_group: bool,
}

impl FinMonoid {
    /// Validates the table (range, associativity, two-sided unit) and
    /// determines whether every element is invertible.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("a monoid needs at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMonoid(format!("table is not {n}x{n}")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidMonoid(format!("table entry {bad} out of range")));
        }
        let mul = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidMonoid(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::InvalidMonoid("no two-sided identity".into()))?;
        let is_group = (0..n).all(|x| (0..n).any(|y| mul(x, y) == identity && mul(y, x) == identity));
        Ok(FinMonoid {
            labels,
            table: flat,
            identity,
            is_group,
        })
    }

    pub fn from_fn(labels: Vec<String>, mut mul: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::new(labels, table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// ℤ/n with elements labelled `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        Self::from_fn((0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n).expect("cyclic table")
    }

    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// Symmetric group on `points` letters, elements in lexicographic order of
    /// their one-line notation; `p·q` applies `q` first.
    pub fn symmetric(points: usize) -> Self {
        let perms = permutations(points);
        let labels = perms
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("")))
            .collect();
        Self::from_fn(labels, |a, b| {
            let composed: Vec<usize> = (0..points).map(|i| perms[a][perms[b][i]]).collect();
            perms.iter().position(|p| *p == composed).expect("closed under composition")
        })
        .expect("symmetric group table")
    }

    /// Elements `(m, n)` indexed by `m * |N| + n`, componentwise product.
    pub fn direct_product(m: &FinMonoid, n: &FinMonoid) -> Self {
        let nn = n.size();
        let labels = (0..m.size() * nn)
            .map(|i| format!("({},{})", m.label(i / nn), n.label(i % nn)))
            .collect();
        Self::from_fn(labels, |a, b| {
            m.mul(a / nn, b / nn) * nn + n.mul(a % nn, b % nn)
        })
        .expect("product of monoids")
    }

    /// Small named groups: `Z<n>`, `Z2xZ2` (or `V4`), `S3`, `S4`.
    pub fn by_name(name: &str) -> Option<Self> {
        let upper = name.trim().to_ascii_uppercase();
        match upper.as_str() {
            "Z2XZ2" | "V4" | "KLEIN" => Some(Self::klein()),
            "S3" => Some(Self::symmetric(3)),
            "S4" => Some(Self::symmetric(4)),
            _ => upper
                .strip_prefix('Z')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| (1..=ISO_SIZE_BOUND).contains(&n))
                .map(Self::cyclic),
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size()).map(|r| r.to_vec()).collect()
    }

    pub fn inverse(&self, x: usize) -> Option<usize> {
        (0..self.size()).find(|&y| self.mul(x, y) == self.identity && self.mul(y, x) == self.identity)
    }

    /// `(index, period)` of the cyclic submonoid generated by `x`: the powers
    /// `x, x², …` repeat with period `period` from exponent `index` on.
    pub fn power_profile(&self, x: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.size()];
        let mut p = x;
        let mut k = 1;
        loop {
            if seen[p] != usize::MAX {
                return (seen[p], k - seen[p]);
            }
            seen[p] = k;
            p = self.mul(p, x);
            k += 1;
        }
    }

    /// Order of `x` in a group (period of its powers).
    pub fn order(&self, x: usize) -> usize {
        self.power_profile(x).1
    }

    pub fn is_submonoid(&self, subset: &[usize]) -> bool {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&x| x < self.size())
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Table equality up to the given relabelling `map: self → other`.
    pub fn is_isomorphism(&self, other: &FinMonoid, map: &[usize]) -> bool {
        let n = self.size();
        if other.size() != n || map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in map {
            if y >= n || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }

    fn invariants(&self) -> (bool, usize, Vec<(usize, usize)>, usize) {
        let n = self.size();
        let mut profiles: Vec<_> = (0..n).map(|x| self.power_profile(x)).collect();
        profiles.sort_unstable();
        let idempotents = (0..n).filter(|&x| self.mul(x, x) == x).count();
        let central = (0..n).filter(|&x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x))).count();
        (self.is_group, idempotents, profiles, central)
    }

    /// Greedy generating set: scan elements in index order and keep those not
    /// yet in the submonoid generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = self.closure(&gens);
        for x in 0..self.size() {
            if !reached[x] {
                gens.push(x);
                reached = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut reached = vec![false; self.size()];
        reached[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !reached[y] {
                    reached[y] = true;
                    queue.push_back(y);
                }
            }
        }
        reached
    }
}

fn permutations(points: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; points], &mut out);
    out
}

/// A structure-preserving map between two finite monoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHom {
    source: Arc<FinMonoid>,
    target: Arc<FinMonoid>,
    map: Vec<usize>,
}

impl MonoidHom {
    pub fn new(source: Arc<FinMonoid>, target: Arc<FinMonoid>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(Error::InvalidMonoid("homomorphism map has the wrong shape".into()));
        }
        if map[source.identity()] != target.identity() {
            return Err(Error::InvalidMonoid("homomorphism does not preserve the identity".into()));
        }
        let n = source.size();
        for a in 0..n {
            for b in 0..n {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidMonoid(format!(
                        "map does not preserve the product of {} and {}",
                        source.label(a),
                        source.label(b)
                    )));
                }
            }
        }
        Ok(MonoidHom { source, target, map })
    }

    pub fn identity(m: Arc<FinMonoid>) -> Self {
        let map = (0..m.size()).collect();
        MonoidHom {
            source: m.clone(),
            target: m,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FinMonoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinMonoid> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.map.iter().collect();
        set.len() == self.map.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.map.len() == self.target.size()
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target && self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn image(&self) -> Vec<usize> {
        let set: BTreeSet<_> = self.map.iter().copied().collect();
        set.into_iter().collect()
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &MonoidHom) -> Result<MonoidHom> {
        if *self.target != *outer.source {
            return Err(Error::InvalidMonoid("cannot compose homomorphisms: codomain mismatch".into()));
        }
        Ok(MonoidHom {
            source: self.source.clone(),
            target: outer.target.clone(),
            map: self.map.iter().map(|&x| outer.map[x]).collect(),
        })
    }
}

/// Searches for a multiplication-preserving bijection `a → b` by
/// backtracking over the images of a generating set of `a`.
///
/// Candidate images are tried in increasing index order, so the result is
/// the least isomorphism in the lexicographic order of generator images.
pub fn find_isomorphism(a: &FinMonoid, b: &FinMonoid) -> Result<Option<Vec<usize>>> {
    for m in [a, b] {
        if m.size() > ISO_SIZE_BOUND {
            return Err(Error::TooLarge {
                what: "monoid",
                size: m.size(),
                bound: ISO_SIZE_BOUND,
            });
        }
    }
    if a.size() != b.size() || a.invariants() != b.invariants() {
        return Ok(None);
    }
    let gens = a.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let profile = a.power_profile(g);
            (0..b.size()).filter(|&y| b.power_profile(y) == profile).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    let found = search(a, b, &gens, &candidates, &mut images);
    if let Some(map) = &found {
        if !a.is_isomorphism(b, map) {
            return Err(Error::Internal("isomorphism search produced a non-isomorphism".into()));
        }
    }
    Ok(found)
}

fn search(
    a: &FinMonoid,
    b: &FinMonoid,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let partial = extend(a, b, &gens[..images.len()], images)?;
    if images.len() == gens.len() {
        return partial.into_iter().collect();
    }
    for &y in &candidates[images.len()] {
        images.push(y);
        if let Some(map) = search(a, b, gens, candidates, images) {
            return Some(map);
        }
        images.pop();
    }
    None
}

/// Propagates generator images through the generated submonoid; `None` on a
/// conflict or a collision.
fn extend(a: &FinMonoid, b: &FinMonoid, gens: &[usize], images: &[usize]) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; a.size()];
    let mut used = vec![false; b.size()];
    map[a.identity()] = Some(b.identity());
    used[b.identity()] = true;
    let mut queue = VecDeque::from([a.identity()]);
    while let Some(x) = queue.pop_front() {
        let mx = map[x].expect("queued elements are mapped");
        for (&g, &img) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let my = b.mul(mx, img);
            match map[y] {
                Some(existing) if existing != my => return None,
                Some(_) => {}
                None => {
                    if used[my] {
                        return None;
                    }
                    used[my] = true;
                    map[y] = Some(my);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}

pub fn are_isomorphic(a: &FinMonoid, b: &FinMonoid) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// `x·S == S·x` for every `x`.
pub fn is_normal_submonoid(m: &FinMonoid, s: &[usize]) -> Result<bool> {
    require_submonoid(m, s)?;
    Ok((0..m.size()).all(|x| {
        let left: BTreeSet<_> = s.iter().map(|&t| m.mul(x, t)).collect();
        let right: BTreeSet<_> = s.iter().map(|&t| m.mul(t, x)).collect();
        left == right
    }))
}

fn require_submonoid(m: &FinMonoid, s: &[usize]) -> Result<()> {
    if m.is_submonoid(s) {
        Ok(())
    } else {
        Err(Error::InvalidMonoid("subset is not a submonoid".into()))
    }
}

/// Result of dividing a monoid by a normal submonoid.
#[derive(Debug, Clone)]
pub struct QuotientMonoid {
    pub monoid: FinMonoid,
    /// Quotient element of each element of the original monoid.
    pub class_of: Vec<usize>,
    /// Whether the relation `s₁a = bs₂` needed a transitive closure to
    /// become an equivalence.
    pub closure_changed: bool,
    /// Whether the relation agrees with `Sa = bS`.
    pub agrees_with_coset_relation: bool,
}

/// Quotient by the congruence `a ~ b ⇔ ∃ s₁, s₂ ∈ S: s₁a = bs₂`.
pub fn quotient_by_normal_submonoid(m: &FinMonoid, s: &[usize]) -> Result<QuotientMonoid> {
    if !is_normal_submonoid(m, s)? {
        return Err(Error::NotNormal("submonoid is not normal".into()));
    }
    let n = m.size();
    let mut rel = vec![vec![false; n]; n];
    for (a, row) in rel.iter_mut().enumerate() {
        let left: BTreeSet<_> = s.iter().map(|&t| m.mul(t, a)).collect();
        for (b, entry) in row.iter_mut().enumerate() {
            *entry = s.iter().any(|&t| left.contains(&m.mul(b, t)));
        }
    }
    let coset_rel: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            let sa: BTreeSet<_> = s.iter().map(|&t| m.mul(t, a)).collect();
            (0..n)
                .map(|b| sa == s.iter().map(|&t| m.mul(b, t)).collect::<BTreeSet<_>>())
                .collect()
        })
        .collect();
    let agrees_with_coset_relation = rel == coset_rel;

    let mut closed = rel.clone();
    for a in 0..n {
        closed[a][a] = true;
        for b in 0..n {
            if rel[a][b] {
                closed[b][a] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if closed[i][k] {
                let via = closed[k].clone();
                for (c, v) in closed[i].iter_mut().zip(via) {
                    *c |= v;
                }
            }
        }
    }
    let closure_changed = closed != rel;

    for a in 0..n {
        for a2 in 0..n {
            if !closed[a][a2] {
                continue;
            }
            for b in 0..n {
                if !closed[m.mul(a, b)][m.mul(a2, b)] || !closed[m.mul(b, a)][m.mul(b, a2)] {
                    return Err(Error::Internal(format!(
                        "relation induced by a normal submonoid is not a congruence at ({}, {}, {})",
                        m.label(a),
                        m.label(a2),
                        m.label(b)
                    )));
                }
            }
        }
    }

    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if class_of[a] == usize::MAX {
            let c = reps.len();
            reps.push(a);
            for b in a..n {
                if closed[a][b] {
                    class_of[b] = c;
                }
            }
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", m.label(r))).collect();
    let monoid = FinMonoid::from_fn(labels, |x, y| class_of[m.mul(reps[x], reps[y])])?;
    Ok(QuotientMonoid {
        monoid,
        class_of,
        closure_changed,
        agrees_with_coset_relation,
    })
}

/// `M ⋊_φ N` on `M × N` with `(m₁,n₁)(m₂,n₂) = (m₁·φ_{n₁}(m₂), n₁n₂)`.
/// Element `(m, n)` has index `m * |N| + n`; `action[n]` is `φ_n` as a map on `M`.
pub fn semidirect_monoid(m: &FinMonoid, n: &FinMonoid, action: &[Vec<usize>]) -> Result<FinMonoid> {
    if action.len() != n.size() {
        return Err(Error::InvalidAction(format!(
            "expected one map per element of N ({}), got {}",
            n.size(),
            action.len()
        )));
    }
    for (i, phi) in action.iter().enumerate() {
        if !m.is_isomorphism(m, phi) {
            return Err(Error::InvalidAction(format!("φ({}) is not an automorphism", n.label(i))));
        }
    }
    for a in 0..n.size() {
        for b in 0..n.size() {
            let ab = &action[n.mul(a, b)];
            if (0..m.size()).any(|x| ab[x] != action[a][action[b][x]]) {
                return Err(Error::InvalidAction(format!(
                    "φ is not a homomorphism at ({}, {})",
                    n.label(a),
                    n.label(b)
                )));
            }
        }
    }
    if action[n.identity()].iter().enumerate().any(|(i, &y)| i != y) {
        return Err(Error::InvalidAction("φ(e) is not the identity".into()));
    }
    let nn = n.size();
    let labels = (0..m.size() * nn)
        .map(|i| format!("({},{})", m.label(i / nn), n.label(i % nn)))
        .collect();
    FinMonoid::from_fn(labels, |x, y| {
        let (m1, n1) = (x / nn, x % nn);
        let (m2, n2) = (y / nn, y % nn);
        m.mul(m1, action[n1][m2]) * nn + n.mul(n1, n2)
    })
}

/// The trivial action of `n` on `m`.
pub fn trivial_action(m: &FinMonoid, n: &FinMonoid) -> Vec<Vec<usize>> {
    vec![(0..m.size()).collect(); n.size()]
}

/// The monoid of classes of a concentration structure.
#[derive(Debug, Clone)]
pub struct ConcentrationMonoid {
    /// Element `i` is class `i` of the partition.
    pub monoid: FinMonoid,
    /// Whether every class contains an isomorphism of the category, which
    /// guarantees a group.
    pub every_class_has_isomorphism: bool,
}

/// Classes with `[f][g] = [f'∘g']` for any composable representatives.
/// Refuses unless all four axioms hold.
pub fn concentration_monoid(cat: &FinCategory, part: &MorphismPartition) -> Result<ConcentrationMonoid> {
    require_concentration(cat, part)?;
    let products = ClassProducts::new(cat, part, true);
    build_from_products(cat, part, |a, b| products.get(a, b))
}

/// Same table as [`concentration_monoid`], but each product is read off a
/// randomly chosen composable pair of representatives.
pub fn concentration_monoid_sampled(cat: &FinCategory, part: &MorphismPartition, seed: u64) -> Result<FinMonoid> {
    require_concentration(cat, part)?;
    let n = part.num_classes();
    let mut choices: Vec<Vec<MorphismId>> = vec![Vec::new(); n * n];
    for (f, g, fg) in cat.composable_pairs() {
        choices[part.class_of(f) * n + part.class_of(g)].push(fg);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let table: Vec<Option<usize>> = choices
        .iter()
        .map(|c| c.choose(&mut rng).map(|&fg| part.class_of(fg)))
        .collect();
    Ok(build_from_products(cat, part, |a, b| table[a * n + b])?.monoid)
}

fn build_from_products(
    cat: &FinCategory,
    part: &MorphismPartition,
    product: impl Fn(usize, usize) -> Option<usize>,
) -> Result<ConcentrationMonoid> {
    let n = part.num_classes();
    let mut table = vec![vec![0; n]; n];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            *entry = product(a, b)
                .ok_or_else(|| Error::Internal(format!("classes {a} and {b} have no composable representatives")))?;
        }
    }
    let labels = part
        .classes()
        .iter()
        .map(|c| format!("[{}]", cat.label(c[0])))
        .collect();
    let monoid = FinMonoid::new(labels, table).map_err(|e| Error::Internal(format!("class table: {e}")))?;
    let every_class_has_isomorphism = part
        .classes()
        .iter()
        .all(|c| c.iter().any(|&m| cat.inverse(m).is_some()));
    Ok(ConcentrationMonoid {
        monoid,
        every_class_has_isomorphism,
    })
}

/// `φ_F([f]) = [F(f)]` for a concentration preserving functor.
pub fn induced_hom(functor: &Functor, source_part: &MorphismPartition, target_part: &MorphismPartition) -> Result<MonoidHom> {
    if let Outcome::Fails((a, b)) = is_concentration_preserving(functor, source_part, target_part)? {
        return Err(Error::NotPreserving(a, b));
    }
    let source = Arc::new(concentration_monoid(functor.source(), source_part)?.monoid);
    let target = Arc::new(concentration_monoid(functor.target(), target_part)?.monoid);
    let map = source_part
        .classes()
        .iter()
        .map(|c| target_part.class_of(functor.mor(c[0])))
        .collect();
    MonoidHom::new(source, target, map).map_err(|e| Error::Internal(format!("induced map: {e}")))
}
