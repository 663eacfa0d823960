//! Finite directed posets, group-valued diagrams on them with a compatible
//! group action, the category `S_G` with its concentration, and equivariant
//! direct limits.

use std::collections::HashMap;
use std::sync::Arc;

use crate::catalg::{semidirect_category, induced_action, CatAction, SubcategoryData};
use crate::category::{FinCategory, Functor, Morphism, MorphismId, ObjectId};
use crate::concentration::{is_concentration_isomorphism, require_concentration, MorphismPartition};
use crate::error::{Error, Result};
use crate::monoid::{concentration_monoid, find_isomorphism, semidirect_monoid, FinMonoid, MonoidHom};

/// A finite partial order in which every pair has an upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedPoset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl DirectedPoset {
    /// `leq[a][b]` is `a ≤ b`.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPoset("empty poset".into()));
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset(format!("relation must be a {n}×{n} matrix")));
        }
        let p = DirectedPoset {
            labels,
            leq: leq.concat(),
        };
        for a in 0..n {
            if !p.leq(a, a) {
                return Err(Error::InvalidPoset(format!("not reflexive at {}", p.labels[a])));
            }
            for b in 0..n {
                if a != b && p.leq(a, b) && p.leq(b, a) {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric: {} and {}",
                        p.labels[a], p.labels[b]
                    )));
                }
                for c in 0..n {
                    if p.leq(a, b) && p.leq(b, c) && !p.leq(a, c) {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive: {} ≤ {} ≤ {}",
                            p.labels[a], p.labels[b], p.labels[c]
                        )));
                    }
                }
                if p.upper_bounds(a, b).is_empty() {
                    return Err(Error::InvalidPoset(format!(
                        "not directed: {} and {} have no upper bound",
                        p.labels[a], p.labels[b]
                    )));
                }
            }
        }
        Ok(p)
    }

    /// The reflexive-transitive closure of the given pairs `(a, b)`, meaning `a ≤ b`.
    pub fn from_relations(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("pair ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if leq[a][k] && leq[k][b] {
                        leq[a][b] = true;
                    }
                }
            }
        }
        Self::new(labels, leq)
    }

    /// `labels[0] ≤ labels[1] ≤ …`.
    pub fn chain(labels: &[&str]) -> Result<Self> {
        let pairs: Vec<_> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Self::from_relations(labels.iter().map(|s| s.to_string()).collect(), &pairs)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn upper_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.leq(a, c) && self.leq(b, c)).collect()
    }

    /// The greatest element; a finite directed poset always has one.
    pub fn maximum(&self) -> usize {
        (0..self.len())
            .find(|&t| (0..self.len()).all(|a| self.leq(a, t)))
            .expect("finite directed posets have a maximum")
    }

    /// All pairs `a ≤ b`, ordered by `(a, b)`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| (0..self.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(a, b))
            .collect()
    }
}

/// The thin category with one morphism `i_A^B` for each `A ≤ B`.
pub fn direct_category(poset: &DirectedPoset) -> FinCategory {
    let rels = poset.relations();
    let index: HashMap<(usize, usize), usize> = rels.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let morphisms = rels
        .iter()
        .map(|&(a, b)| Morphism::new(format!("i_{}^{}", poset.label(a), poset.label(b)), ObjectId(a), ObjectId(b)))
        .collect();
    let identities = (0..poset.len()).map(|a| MorphismId(index[&(a, a)])).collect();
    FinCategory::from_fn(poset.labels.clone(), morphisms, identities, |f, g| {
        MorphismId(index[&(rels[g.0].0, rels[f.0].1)])
    })
    .expect("a poset is a category")
}

/// A functor from a directed poset to groups. Groups live in a registry and
/// each element points to an entry, so two elements carry the same group
/// exactly when they point to the same entry.
#[derive(Debug, Clone)]
pub struct GroupDiagram {
    poset: DirectedPoset,
    registry: Vec<Arc<FinMonoid>>,
    group_of: Vec<usize>,
    homs: HashMap<(usize, usize), MonoidHom>,
}

impl GroupDiagram {
    /// `maps` gives `F(A ≤ B)` as an element map for every strict relation
    /// `A < B`; identities are filled in.
    pub fn new(
        poset: DirectedPoset,
        registry: Vec<Arc<FinMonoid>>,
        group_of: Vec<usize>,
        maps: &[((usize, usize), Vec<usize>)],
    ) -> Result<Self> {
        if group_of.len() != poset.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} group assignments for {} elements",
                group_of.len(),
                poset.len()
            )));
        }
        for (i, g) in registry.iter().enumerate() {
            if !g.is_group() {
                return Err(Error::NotAGroup(format!("registry entry {i}")));
            }
        }
        if let Some(&bad) = group_of.iter().find(|&&g| g >= registry.len()) {
            return Err(Error::InvalidDiagram(format!("registry entry {bad} does not exist")));
        }
        let mut homs = HashMap::new();
        for a in 0..poset.len() {
            homs.insert((a, a), MonoidHom::identity(registry[group_of[a]].clone()));
        }
        for ((a, b), map) in maps {
            let (a, b) = (*a, *b);
            if a >= poset.len() || b >= poset.len() || a == b || !poset.leq(a, b) {
                return Err(Error::InvalidDiagram(format!("({a}, {b}) is not a strict relation")));
            }
            let hom = MonoidHom::new(registry[group_of[a]].clone(), registry[group_of[b]].clone(), map.clone())
                .map_err(|e| Error::InvalidDiagram(format!("{} ≤ {}: {e}", poset.label(a), poset.label(b))))?;
            if homs.insert((a, b), hom).is_some() {
                return Err(Error::InvalidDiagram(format!(
                    "{} ≤ {} given twice",
                    poset.label(a),
                    poset.label(b)
                )));
            }
        }
        for (a, b) in poset.relations() {
            if !homs.contains_key(&(a, b)) {
                return Err(Error::InvalidDiagram(format!(
                    "no map for {} ≤ {}",
                    poset.label(a),
                    poset.label(b)
                )));
            }
        }
        for (a, b) in poset.relations() {
            for c in (0..poset.len()).filter(|&c| poset.leq(b, c)) {
                let via = homs[&(a, b)].then(&homs[&(b, c)])?;
                if via.map() != homs[&(a, c)].map() {
                    return Err(Error::InvalidDiagram(format!(
                        "maps along {} ≤ {} ≤ {} do not compose",
                        poset.label(a),
                        poset.label(b),
                        poset.label(c)
                    )));
                }
            }
        }
        Ok(GroupDiagram {
            poset,
            registry,
            group_of,
            homs,
        })
    }

    pub fn poset(&self) -> &DirectedPoset {
        &self.poset
    }

    pub fn registry(&self) -> &[Arc<FinMonoid>] {
        &self.registry
    }

    pub fn group_index(&self, a: usize) -> usize {
        self.group_of[a]
    }

    pub fn group(&self, a: usize) -> &Arc<FinMonoid> {
        &self.registry[self.group_of[a]]
    }

    pub fn hom(&self, a: usize, b: usize) -> Option<&MonoidHom> {
        self.homs.get(&(a, b))
    }

    /// `F(i_A^C)(α) = F(i_B^C)(β)`.
    pub fn agree_at(&self, a: usize, alpha: usize, b: usize, beta: usize, c: usize) -> bool {
        match (self.hom(a, c), self.hom(b, c)) {
            (Some(f), Some(g)) => f.apply(alpha) == g.apply(beta),
            _ => false,
        }
    }

    /// The classical direct limit, which is the group at the maximum.
    pub fn classical_limit(&self) -> FinMonoid {
        (**self.group(self.poset.maximum())).clone()
    }
}

/// A group acting on a poset by order automorphisms: `perms[g][a] = g(a)`.
#[derive(Debug, Clone)]
pub struct PosetAction {
    group: Arc<FinMonoid>,
    perms: Vec<Vec<usize>>,
}

impl PosetAction {
    pub fn new(poset: &DirectedPoset, group: Arc<FinMonoid>, perms: Vec<Vec<usize>>) -> Result<Self> {
        if !group.is_group() {
            return Err(Error::NotAGroup("acting monoid".into()));
        }
        let n = poset.len();
        if perms.len() != group.size() {
            return Err(Error::InvalidAction(format!(
                "{} permutations for {} group elements",
                perms.len(),
                group.size()
            )));
        }
        for (g, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidAction(format!("{} does not act by a permutation", group.label(g))));
            }
            for (a, b) in poset.relations() {
                if !poset.leq(p[a], p[b]) {
                    return Err(Error::InvalidAction(format!(
                        "{} does not preserve {} ≤ {}",
                        group.label(g),
                        poset.label(a),
                        poset.label(b)
                    )));
                }
            }
        }
        if perms[group.identity()].iter().enumerate().any(|(a, &x)| a != x) {
            return Err(Error::InvalidAction("the identity acts nontrivially".into()));
        }
        for g in 0..group.size() {
            for h in 0..group.size() {
                let gh = group.mul(g, h);
                if (0..n).any(|a| perms[gh][a] != perms[g][perms[h][a]]) {
                    return Err(Error::InvalidAction(format!(
                        "action of {}·{} is not the composite",
                        group.label(g),
                        group.label(h)
                    )));
                }
            }
        }
        Ok(PosetAction { group, perms })
    }

    pub fn trivial(poset: &DirectedPoset, group: Arc<FinMonoid>) -> Self {
        let perms = vec![(0..poset.len()).collect(); group.size()];
        PosetAction { group, perms }
    }

    pub fn group(&self) -> &Arc<FinMonoid> {
        &self.group
    }

    pub fn apply(&self, g: usize, a: usize) -> usize {
        self.perms[g][a]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// The action restricted to a subgroup, given by its elements.
    pub fn restrict(&self, subgroup: &[usize]) -> Result<PosetAction> {
        let mut elems = subgroup.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.group.is_submonoid(&elems) {
            return Err(Error::InvalidAction("not a subgroup".into()));
        }
        let pos = |x: usize| elems.binary_search(&x).expect("closed under multiplication");
        let labels = elems.iter().map(|&x| self.group.label(x).to_string()).collect();
        let sub = FinMonoid::from_fn(labels, |a, b| pos(self.group.mul(elems[a], elems[b])))?;
        Ok(PosetAction {
            group: Arc::new(sub),
            perms: elems.iter().map(|&x| self.perms[x].clone()).collect(),
        })
    }
}

/// `F(g(A))` is the same registry entry as `F(A)`, and `F(g(A) ≤ g(B))`
/// equals `F(A ≤ B)` as a map.
pub fn check_equivariant(diagram: &GroupDiagram, action: &PosetAction) -> Result<()> {
    let poset = diagram.poset();
    for g in 0..action.group.size() {
        for a in 0..poset.len() {
            let ga = action.apply(g, a);
            if diagram.group_index(ga) != diagram.group_index(a) {
                return Err(Error::Equivariance(format!(
                    "F({}) and F({}) are different groups, but {} moves one to the other",
                    poset.label(a),
                    poset.label(ga),
                    action.group.label(g)
                )));
            }
        }
        for (a, b) in poset.relations() {
            let (ga, gb) = (action.apply(g, a), action.apply(g, b));
            if diagram.hom(a, b).map(MonoidHom::map) != diagram.hom(ga, gb).map(MonoidHom::map) {
                return Err(Error::Equivariance(format!(
                    "F({} ≤ {}) differs from F({} ≤ {})",
                    poset.label(a),
                    poset.label(b),
                    poset.label(ga),
                    poset.label(gb)
                )));
            }
        }
    }
    Ok(())
}

/// `S_G`: morphism `i` is `triples[i] = (A, α, f)`, running from `f⁻¹(A)` to `A`.
#[derive(Debug, Clone)]
pub struct SgCategory {
    pub category: Arc<FinCategory>,
    pub partition: MorphismPartition,
    pub triples: Vec<(usize, usize, usize)>,
}

impl SgCategory {
    pub fn index_of(&self, a: usize, alpha: usize, f: usize) -> Option<MorphismId> {
        self.triples.iter().position(|&t| t == (a, alpha, f)).map(MorphismId)
    }
}

/// `(A, α, f) ∘ (B, β, g) = (A, αβ, fg)`, with `(A, α, f) ~ (B, β, g)` iff
/// `f = g` and `α`, `β` agree in the group at the maximum.
pub fn build_s_g(diagram: &GroupDiagram, action: &PosetAction) -> Result<SgCategory> {
    check_equivariant(diagram, action)?;
    let poset = diagram.poset();
    let g = &action.group;
    let mut triples = Vec::new();
    let mut sources = Vec::new();
    for b in 0..poset.len() {
        for f in 0..g.size() {
            let a = action.apply(f, b);
            for alpha in 0..diagram.group(a).size() {
                triples.push((a, alpha, f));
                sources.push(b);
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let morphisms = triples
        .iter()
        .zip(&sources)
        .map(|(&(a, alpha, f), &b)| {
            Morphism::new(
                format!("({},{},{})", poset.label(a), diagram.group(a).label(alpha), g.label(f)),
                ObjectId(b),
                ObjectId(a),
            )
        })
        .collect();
    let identities = (0..poset.len())
        .map(|a| MorphismId(index[&(a, diagram.group(a).identity(), g.identity())]))
        .collect();
    let category = FinCategory::from_fn(poset.labels().to_vec(), morphisms, identities, |x, y| {
        let (a, alpha, f) = triples[x.0];
        let (_, beta, h) = triples[y.0];
        MorphismId(index[&(a, diagram.group(a).mul(alpha, beta), g.mul(f, h))])
    })?;
    let top = poset.maximum();
    let keys: Vec<(usize, usize)> = triples
        .iter()
        .map(|&(a, alpha, f)| (f, diagram.hom(a, top).expect("a ≤ top").apply(alpha)))
        .collect();
    let partition = MorphismPartition::from_class_of(&keys);
    require_concentration(&category, &partition).map_err(|e| Error::Internal(format!("S_G relation: {e}")))?;
    Ok(SgCategory {
        category: Arc::new(category),
        partition,
        triples,
    })
}

/// The concentration group of `S_G`.
pub fn equivariant_direct_limit(diagram: &GroupDiagram, action: &PosetAction) -> Result<FinMonoid> {
    let sg = build_s_g(diagram, action)?;
    let m = concentration_monoid(&sg.category, &sg.partition)?.monoid;
    if !m.is_group() {
        return Err(Error::Internal("equivariant direct limit is not a group".into()));
    }
    Ok(m)
}

/// The morphisms of `S_G` whose group component lies in `subgroup`.
pub fn subgroup_subcategory(sg: &SgCategory, subgroup: &[usize]) -> SubcategoryData {
    SubcategoryData::new(
        sg.category.objects(),
        sg.triples
            .iter()
            .enumerate()
            .filter(|(_, t)| subgroup.contains(&t.2))
            .map(|(i, _)| MorphismId(i)),
    )
}

/// The pieces of the decomposition `S_G ≅ S_0 ⋊ G` and of
/// `lim^G F ≅ lim F ⋊ G`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub s0: SgCategory,
    pub action: CatAction,
    pub semidirect: Arc<FinCategory>,
    pub semidirect_partition: MorphismPartition,
    /// `((A, α), f) ↦ (A, α, f)`.
    pub psi: Functor,
    pub psi_is_isomorphism: bool,
    pub limit: FinMonoid,
    pub equivariant_limit: FinMonoid,
    /// `φ(g)[A, α] = [g(A), α]`, indexed by classes of `S_0`.
    pub phi: Vec<Vec<usize>>,
    pub monoid_isomorphism: Option<Vec<usize>>,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.psi_is_isomorphism && self.monoid_isomorphism.is_some()
    }
}

pub fn check_semidirect_decomposition(diagram: &GroupDiagram, action: &PosetAction) -> Result<Decomposition> {
    let sg = build_s_g(diagram, action)?;
    let poset = diagram.poset();
    let s0 = build_s_g(diagram, &PosetAction::trivial(poset, Arc::new(FinMonoid::trivial())))?;
    let g = action.group.clone();
    let base = Arc::new(FinCategory::one_object(&g));
    let functors = (0..g.size())
        .map(|x| {
            let obj_map = (0..poset.len()).map(|a| ObjectId(action.apply(x, a))).collect();
            let mor_map = s0
                .triples
                .iter()
                .map(|&(a, alpha, e)| s0.index_of(action.apply(x, a), alpha, e).expect("equivariant"))
                .collect();
            Functor::new(s0.category.clone(), s0.category.clone(), obj_map, mor_map)
        })
        .collect::<Result<Vec<_>>>()?;
    let cat_action = CatAction::new(base.clone(), s0.category.clone(), functors)?;
    let base_part = MorphismPartition::discrete(&base);
    let (sd, sd_part) = semidirect_category(&cat_action, &s0.partition, &base_part)?;
    let psi_mor = sd
        .triples
        .iter()
        .map(|&(_, alpha, f)| {
            let (a, x, _) = s0.triples[alpha.0];
            sg.index_of(a, x, f.0).expect("every pair has an image")
        })
        .collect();
    // objects of the product are (A, *), with index A
    let psi = Functor::new(
        sd.category.clone(),
        sg.category.clone(),
        sd.category.objects().collect(),
        psi_mor,
    )?;
    let psi_is_isomorphism =
        psi.check().ok() && is_concentration_isomorphism(&psi, &sd_part, &sg.partition)?;
    let limit = concentration_monoid(&s0.category, &s0.partition)?.monoid;
    let equivariant_limit = concentration_monoid(&sg.category, &sg.partition)?.monoid;
    let phi = induced_action(&cat_action, &s0.partition, &base_part)?;
    let product = semidirect_monoid(&limit, &g, &phi)?;
    let monoid_isomorphism = find_isomorphism(&equivariant_limit, &product)?;
    Ok(Decomposition {
        s0,
        action: cat_action,
        semidirect: sd.category,
        semidirect_partition: sd_part,
        psi,
        psi_is_isomorphism,
        limit,
        equivariant_limit,
        phi,
        monoid_isomorphism,
    })
}

/// `C ≤ D` with `ℤ/2 → ℤ/4`, `x ↦ 2x`, and the trivial group acting.
pub fn chain_fixture() -> (GroupDiagram, PosetAction) {
    let poset = DirectedPoset::chain(&["C", "D"]).expect("chain");
    let registry = vec![Arc::new(FinMonoid::cyclic(2)), Arc::new(FinMonoid::cyclic(4))];
    let diagram = GroupDiagram::new(poset, registry, vec![0, 1], &[((0, 1), vec![0, 2])]).expect("valid diagram");
    let action = PosetAction::trivial(diagram.poset(), Arc::new(FinMonoid::trivial()));
    (diagram, action)
}

/// `A, B ≤ T`, all groups the same `ℤ/2` with identity maps, and `ℤ/2`
/// swapping `A` and `B`.
pub fn swap_fixture() -> (GroupDiagram, PosetAction) {
    let labels = vec!["A".to_string(), "B".to_string(), "T".to_string()];
    let poset = DirectedPoset::from_relations(labels, &[(0, 2), (1, 2)]).expect("directed");
    let registry = vec![Arc::new(FinMonoid::cyclic(2))];
    let id = vec![0, 1];
    let diagram =
        GroupDiagram::new(poset, registry, vec![0, 0, 0], &[((0, 2), id.clone()), ((1, 2), id)]).expect("valid diagram");
    let action = PosetAction::new(
        diagram.poset(),
        Arc::new(FinMonoid::cyclic(2)),
        vec![vec![0, 1, 2], vec![1, 0, 2]],
    )
    .expect("valid action");
    (diagram, action)
}

/// One point carrying `group`, acted on trivially by `acting`.
pub fn point_fixture(group: FinMonoid, acting: FinMonoid) -> (GroupDiagram, PosetAction) {
    let poset = DirectedPoset::chain(&["pt"]).expect("point");
    let diagram = GroupDiagram::new(poset, vec![Arc::new(group)], vec![0], &[]).expect("valid diagram");
    let action = PosetAction::trivial(diagram.poset(), Arc::new(acting));
    (diagram, action)
}
