//! Sub-concentrations, normality, quotient concentrations and semidirect
//! products of categories with concentration.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::category::{compose_functors, FinCategory, Functor, Morphism, MorphismId, ObjectId};
use crate::concentration::{check_concentration, require_concentration, MorphismPartition, Outcome};
use crate::error::{Error, Result};
use crate::monoid::{concentration_monoid, quotient_by_normal_submonoid, FinMonoid};

/// A set of objects and a set of morphisms of an ambient category, meant to
/// form a subcategory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcategoryData {
    objects: Vec<ObjectId>,
    morphisms: Vec<MorphismId>,
}

/// A validated subcategory as a category of its own, with its inclusion.
/// Objects and morphisms keep the ambient order.
#[derive(Debug, Clone)]
pub struct Subcategory {
    pub category: Arc<FinCategory>,
    pub inclusion: Functor,
}

impl SubcategoryData {
    pub fn new(objects: impl IntoIterator<Item = ObjectId>, morphisms: impl IntoIterator<Item = MorphismId>) -> Self {
        let objects: BTreeSet<_> = objects.into_iter().collect();
        let morphisms: BTreeSet<_> = morphisms.into_iter().collect();
        SubcategoryData {
            objects: objects.into_iter().collect(),
            morphisms: morphisms.into_iter().collect(),
        }
    }

    pub fn from_labels<S: AsRef<str>>(cat: &FinCategory, objects: &[S], morphisms: &[S]) -> Result<Self> {
        let objs = objects
            .iter()
            .map(|l| {
                cat.object_by_label(l.as_ref())
                    .ok_or_else(|| Error::InvalidSubcategory(format!("unknown object {:?}", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        let mors = morphisms
            .iter()
            .map(|l| {
                cat.morphism_by_label(l.as_ref())
                    .ok_or_else(|| Error::InvalidSubcategory(format!("unknown morphism {:?}", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(objs, mors))
    }

    pub fn full(cat: &FinCategory) -> Self {
        Self::new(cat.objects(), cat.morphisms())
    }

    /// One object and its identity.
    pub fn identity_at(cat: &FinCategory, object: ObjectId) -> Self {
        Self::new([object], [cat.identity(object)])
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[MorphismId] {
        &self.morphisms
    }

    pub fn contains(&self, m: MorphismId) -> bool {
        self.morphisms.binary_search(&m).is_ok()
    }

    /// Endpoints, identities and composites stay inside.
    pub fn validate(&self, cat: &FinCategory) -> Result<()> {
        for &o in &self.objects {
            cat.check_object(o)?;
        }
        for &m in &self.morphisms {
            cat.check_morphism(m)?;
        }
        let has_obj = |o: ObjectId| self.objects.binary_search(&o).is_ok();
        for &m in &self.morphisms {
            if !has_obj(cat.src(m)) || !has_obj(cat.tgt(m)) {
                return Err(Error::InvalidSubcategory(format!(
                    "{} has an endpoint outside the object set",
                    cat.label(m)
                )));
            }
        }
        for &o in &self.objects {
            if !self.contains(cat.identity(o)) {
                return Err(Error::InvalidSubcategory(format!(
                    "identity of {} is missing",
                    cat.object_label(o)
                )));
            }
        }
        for &f in &self.morphisms {
            for &g in &self.morphisms {
                if let Some(fg) = cat.compose(f, g) {
                    if !self.contains(fg) {
                        return Err(Error::InvalidSubcategory(format!(
                            "{} ∘ {} = {} is missing",
                            cat.label(f),
                            cat.label(g),
                            cat.label(fg)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn materialize(&self, cat: &Arc<FinCategory>) -> Result<Subcategory> {
        self.validate(cat)?;
        let obj_index = |o: ObjectId| ObjectId(self.objects.binary_search(&o).expect("validated"));
        let mor_index = |m: MorphismId| MorphismId(self.morphisms.binary_search(&m).expect("validated"));
        let morphisms = self
            .morphisms
            .iter()
            .map(|&m| Morphism::new(cat.label(m), obj_index(cat.src(m)), obj_index(cat.tgt(m))))
            .collect();
        let identities = self.objects.iter().map(|&o| mor_index(cat.identity(o))).collect();
        let sub = FinCategory::from_fn(
            self.objects.iter().map(|&o| cat.object_label(o).to_string()).collect(),
            morphisms,
            identities,
            |f, g| mor_index(cat.compose(self.morphisms[f.0], self.morphisms[g.0]).expect("composable")),
        )?;
        let sub = Arc::new(sub);
        let inclusion = Functor::new(sub.clone(), cat.clone(), self.objects.clone(), self.morphisms.clone())?;
        Ok(Subcategory {
            category: sub,
            inclusion,
        })
    }
}

/// The subcategory together with the restriction of `part` to it.
pub fn restrict(cat: &Arc<FinCategory>, part: &MorphismPartition, sub: &SubcategoryData) -> Result<(Subcategory, MorphismPartition)> {
    part.check_against(cat)?;
    let s = sub.materialize(cat)?;
    let keys: Vec<usize> = sub.morphisms.iter().map(|&m| part.class_of(m)).collect();
    Ok((s, MorphismPartition::from_class_of(&keys)))
}

/// The restriction of `part` is a concentration on the subcategory.
pub fn check_closed(cat: &Arc<FinCategory>, part: &MorphismPartition, sub: &SubcategoryData) -> Result<bool> {
    let (s, restricted) = restrict(cat, part, sub)?;
    Ok(check_concentration(&s.category, &restricted, 2)?.is_concentration())
}

/// Every morphism related to a morphism of the subcategory lies in it; this
/// is enough for closedness.
pub fn is_saturated(cat: &FinCategory, part: &MorphismPartition, sub: &SubcategoryData) -> Result<bool> {
    part.check_against(cat)?;
    sub.validate(cat)?;
    Ok(sub
        .morphisms
        .iter()
        .all(|&m| part.class(part.class_of(m)).iter().all(|&g| sub.contains(g))))
}

fn require_closed(cat: &Arc<FinCategory>, part: &MorphismPartition, sub: &SubcategoryData) -> Result<()> {
    require_concentration(cat, part)?;
    if check_closed(cat, part, sub)? {
        Ok(())
    } else {
        Err(Error::NotConcentration("the restriction to the subcategory is not a concentration".into()))
    }
}

/// Classes of the ambient concentration that meet the subcategory.
pub fn sub_classes(part: &MorphismPartition, sub: &SubcategoryData) -> Vec<usize> {
    let set: BTreeSet<usize> = sub.morphisms.iter().map(|&m| part.class_of(m)).collect();
    set.into_iter().collect()
}

/// For every `f` and every `h` in the subcategory there are `h₁, h₂` in it
/// with `[f][h] = [h₁][f]` and `[h][f] = [f][h₂]`. Decided in the
/// concentration monoid. Witness: `(f, h)`.
pub fn is_normal_subconcentration(
    cat: &Arc<FinCategory>,
    part: &MorphismPartition,
    sub: &SubcategoryData,
) -> Result<Outcome<(MorphismId, MorphismId)>> {
    require_closed(cat, part, sub)?;
    let m = concentration_monoid(cat, part)?.monoid;
    let s = sub_classes(part, sub);
    for x in 0..m.size() {
        for &h in &s {
            let left = s.iter().any(|&h1| m.mul(x, h) == m.mul(h1, x));
            let right = s.iter().any(|&h2| m.mul(h, x) == m.mul(x, h2));
            if !left || !right {
                return Ok(Outcome::Fails((part.class(x)[0], part.class(h)[0])));
            }
        }
    }
    Ok(Outcome::Holds)
}

/// `f ~/B g` iff `[h₁][f] = [g][h₂]` for some `h₁, h₂` in the subcategory.
pub fn quotient_concentration(
    cat: &Arc<FinCategory>,
    part: &MorphismPartition,
    sub: &SubcategoryData,
) -> Result<MorphismPartition> {
    if let Outcome::Fails((f, h)) = is_normal_subconcentration(cat, part, sub)? {
        return Err(Error::NotNormal(format!(
            "no suitable conjugates for {} and {}",
            cat.label(f),
            cat.label(h)
        )));
    }
    let m = concentration_monoid(cat, part)?.monoid;
    let q = quotient_by_normal_submonoid(&m, &sub_classes(part, sub))?;
    let keys: Vec<usize> = part.class_map().iter().map(|&c| q.class_of[c]).collect();
    let out = MorphismPartition::from_class_of(&keys);
    require_concentration(cat, &out).map_err(|e| Error::Internal(format!("quotient concentration: {e}")))?;
    Ok(out)
}

/// A functor from a category `D` to endofunctors of a category `C`, stored as
/// one endofunctor per morphism of `D`.
#[derive(Debug, Clone)]
pub struct CatAction {
    base: Arc<FinCategory>,
    fiber: Arc<FinCategory>,
    functors: Vec<Functor>,
}

impl CatAction {
    /// Checks that each entry is an endofunctor of `fiber`, identities act as
    /// the identity, and `Φ(f₂∘f₁) = Φ(f₂)∘Φ(f₁)`.
    pub fn new(base: Arc<FinCategory>, fiber: Arc<FinCategory>, functors: Vec<Functor>) -> Result<Self> {
        if functors.len() != base.num_morphisms() {
            return Err(Error::InvalidAction(format!(
                "{} functors given for {} morphisms",
                functors.len(),
                base.num_morphisms()
            )));
        }
        for (i, f) in functors.iter().enumerate() {
            if **f.source() != *fiber || **f.target() != *fiber {
                return Err(Error::InvalidAction(format!("Φ({}) is not an endofunctor", base.label(MorphismId(i)))));
            }
            if let Some(v) = f.check().violations.first() {
                return Err(Error::InvalidAction(format!("Φ({}): {v}", base.label(MorphismId(i)))));
            }
        }
        for o in base.objects() {
            if !functors[base.identity(o).0].is_identity() {
                return Err(Error::InvalidAction(format!(
                    "identity of {} does not act as the identity",
                    base.object_label(o)
                )));
            }
        }
        for (f2, f1, f21) in base.composable_pairs() {
            if compose_functors(&functors[f2.0], &functors[f1.0])? != functors[f21.0] {
                return Err(Error::InvalidAction(format!(
                    "Φ({} ∘ {}) != Φ({}) ∘ Φ({})",
                    base.label(f2),
                    base.label(f1),
                    base.label(f2),
                    base.label(f1)
                )));
            }
        }
        Ok(CatAction { base, fiber, functors })
    }

    /// Every morphism acts as the identity.
    pub fn trivial(base: Arc<FinCategory>, fiber: Arc<FinCategory>) -> Self {
        let functors = vec![Functor::identity(fiber.clone()); base.num_morphisms()];
        CatAction { base, fiber, functors }
    }

    /// An action of a monoid on itself-as-one-object-category through
    /// monoid endomorphisms: `maps[n]` is the map by which element `n` of
    /// `acting` acts on `acted`.
    pub fn from_monoid_action(acted: &FinMonoid, acting: &FinMonoid, maps: &[Vec<usize>]) -> Result<Self> {
        let fiber = Arc::new(FinCategory::one_object(acted));
        let base = Arc::new(FinCategory::one_object(acting));
        if maps.len() != acting.size() {
            return Err(Error::InvalidAction("one map per element of the acting monoid is required".into()));
        }
        let functors = maps
            .iter()
            .map(|m| {
                if m.len() != acted.size() {
                    return Err(Error::InvalidAction("map has the wrong length".into()));
                }
                Functor::new(fiber.clone(), fiber.clone(), vec![ObjectId(0)], m.iter().map(|&x| MorphismId(x)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, fiber, functors)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn fiber(&self) -> &Arc<FinCategory> {
        &self.fiber
    }

    pub fn functor(&self, f: MorphismId) -> &Functor {
        &self.functors[f.0]
    }

    pub fn functors(&self) -> &[Functor] {
        &self.functors
    }

    /// Every `Φ(f)` is strongly invertible.
    pub fn by_automorphisms(&self) -> bool {
        self.functors.iter().all(|f| f.strong_inverse().is_some())
    }
}

/// `α ~ α'` and `f ~ f'` imply `Φ_f(α) ~ Φ_{f'}(α')`. Witness: `[α, α', f, f']`.
pub fn check_compatible(
    action: &CatAction,
    fiber_part: &MorphismPartition,
    base_part: &MorphismPartition,
) -> Result<Outcome<[MorphismId; 4]>> {
    fiber_part.check_against(&action.fiber)?;
    base_part.check_against(&action.base)?;
    for fclass in base_part.classes() {
        for aclass in fiber_part.classes() {
            let (f0, a0) = (fclass[0], aclass[0]);
            let reference = action.functor(f0).mor(a0);
            for &f in fclass {
                for &a in aclass {
                    if !fiber_part.same_class(action.functor(f).mor(a), reference) {
                        return Ok(Outcome::Fails([a0, a, f0, f]));
                    }
                }
            }
        }
    }
    Ok(Outcome::Holds)
}

/// `C ⋊_Φ D`. Object `(c, d)` has index `c·|Ob D| + d`; morphism `i` is
/// `(source_c, α, f)` = `triples[i]`, running from `(source_c, src f)` to
/// `(tgt α, tgt f)` with `α: Φ_f(source_c) → tgt α`.
#[derive(Debug, Clone)]
pub struct SemidirectCategory {
    pub category: Arc<FinCategory>,
    pub triples: Vec<(ObjectId, MorphismId, MorphismId)>,
}

/// The plain semidirect product for an action by arbitrary endofunctors.
pub fn semidirect_plain(action: &CatAction) -> Result<SemidirectCategory> {
    let (c, d) = (&*action.fiber, &*action.base);
    let nd = d.num_objects();
    let obj = |x: ObjectId, y: ObjectId| ObjectId(x.0 * nd + y.0);
    let mut triples = Vec::new();
    for f in d.morphisms() {
        let phi = action.functor(f);
        for c1 in c.objects() {
            for alpha in c.morphisms().filter(|&a| c.src(a) == phi.obj(c1)) {
                triples.push((c1, alpha, f));
            }
        }
    }
    let index: HashMap<(ObjectId, MorphismId, MorphismId), usize> =
        triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let injective_on_objects = |f: MorphismId| {
        let images: BTreeSet<_> = action.functor(f).obj_map().iter().collect();
        images.len() == c.num_objects()
    };
    let morphisms = triples
        .iter()
        .map(|&(c1, alpha, f)| {
            let mut label = format!("({},{})", c.label(alpha), d.label(f));
            if !injective_on_objects(f) {
                label.push_str(&format!("@{}", c.object_label(c1)));
            }
            Morphism::new(label, obj(c1, d.src(f)), obj(c.tgt(alpha), d.tgt(f)))
        })
        .collect();
    let objects = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", c.object_label(x), d.object_label(y)))
        .collect();
    let identities = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| MorphismId(index[&(x, c.identity(x), d.identity(y))]))
        .collect();
    let category = FinCategory::from_fn(objects, morphisms, identities, |m2, m1| {
        let (_, a2, f2) = triples[m2.0];
        let (c1, a1, f1) = triples[m1.0];
        let moved = action.functor(f2).mor(a1);
        let alpha = c.compose(a2, moved).expect("endpoints match");
        let f = d.compose(f2, f1).expect("endpoints match");
        MorphismId(index[&(c1, alpha, f)])
    })?;
    Ok(SemidirectCategory {
        category: Arc::new(category),
        triples,
    })
}

/// The semidirect product of categories with concentration, with the
/// componentwise relation `(α, f) ~ (α', f')` iff `α ~ α'` and `f ~ f'`.
pub fn semidirect_category(
    action: &CatAction,
    fiber_part: &MorphismPartition,
    base_part: &MorphismPartition,
) -> Result<(SemidirectCategory, MorphismPartition)> {
    if !action.by_automorphisms() {
        return Err(Error::InvalidAction("some Φ(f) is not strongly invertible".into()));
    }
    require_concentration(&action.fiber, fiber_part)?;
    require_concentration(&action.base, base_part)?;
    if let Outcome::Fails([a, a2, f, f2]) = check_compatible(action, fiber_part, base_part)? {
        return Err(Error::IncompatibleAction(format!(
            "{} ~ {} and {} ~ {} but their images are not related",
            action.fiber.label(a),
            action.fiber.label(a2),
            action.base.label(f),
            action.base.label(f2)
        )));
    }
    let sd = semidirect_plain(action)?;
    let keys: Vec<(usize, usize)> = sd
        .triples
        .iter()
        .map(|&(_, a, f)| (fiber_part.class_of(a), base_part.class_of(f)))
        .collect();
    let part = MorphismPartition::from_class_of(&keys);
    require_concentration(&sd.category, &part).map_err(|e| Error::Internal(format!("semidirect product: {e}")))?;
    Ok((sd, part))
}

/// `φ([f])([α]) = [Φ_f(α)]`, indexed by the classes of the two partitions
/// (the element order of their concentration monoids).
pub fn induced_action(
    action: &CatAction,
    fiber_part: &MorphismPartition,
    base_part: &MorphismPartition,
) -> Result<Vec<Vec<usize>>> {
    if let Outcome::Fails(_) = check_compatible(action, fiber_part, base_part)? {
        return Err(Error::IncompatibleAction("the action does not descend to classes".into()));
    }
    Ok(base_part
        .classes()
        .iter()
        .map(|fc| {
            fiber_part
                .classes()
                .iter()
                .map(|ac| fiber_part.class_of(action.functor(fc[0]).mor(ac[0])))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::monoid::{are_isomorphic, induced_hom, semidirect_monoid};

    fn e1_with(which: char) -> (Arc<FinCategory>, MorphismPartition) {
        let e1 = Arc::new(fixtures::e1());
        let p = fixtures::e1_partition(&e1, which);
        (e1, p)
    }

    fn b_sub(e1: &FinCategory) -> SubcategoryData {
        SubcategoryData::from_labels(e1, &["D"], &["0_D", "2_D"]).unwrap()
    }

    #[test]
    fn example_sub_concentration() {
        let (e1, a) = e1_with('a');
        let b = b_sub(&e1);
        assert!(check_closed(&e1, &a, &b).unwrap());
        assert!(!is_saturated(&e1, &a, &b).unwrap());
        let (s, restricted) = restrict(&e1, &a, &b).unwrap();
        assert_eq!(restricted, MorphismPartition::discrete(&s.category));
        let m = concentration_monoid(&s.category, &restricted).unwrap().monoid;
        assert!(are_isomorphic(&m, &FinMonoid::cyclic(2)).unwrap());
        let hom = induced_hom(&s.inclusion, &restricted, &a).unwrap();
        assert!(hom.is_injective());
        let expected: Vec<usize> = ["0_D", "2_D"]
            .iter()
            .map(|l| a.class_of(e1.morphism_by_label(l).unwrap()))
            .collect();
        assert_eq!(hom.image(), expected);
    }

    #[test]
    fn full_subcategory_of_trivial() {
        let e1 = Arc::new(fixtures::e1());
        let t = MorphismPartition::trivial(&e1);
        let full = SubcategoryData::full(&e1);
        assert!(check_closed(&e1, &t, &full).unwrap());
        assert!(is_saturated(&e1, &t, &full).unwrap());
        assert_eq!(restrict(&e1, &t, &full).unwrap().1, t);
    }

    #[test]
    fn missing_composite_is_not_a_subcategory() {
        let (e1, a) = e1_with('a');
        let bad = SubcategoryData::from_labels(&e1, &["D"], &["0_D", "1_D"]).unwrap();
        assert!(matches!(check_closed(&e1, &a, &bad), Err(Error::InvalidSubcategory(_))));
    }

    #[test]
    fn example_normal_and_quotient() {
        let (e1, a) = e1_with('a');
        let b = b_sub(&e1);
        assert!(is_normal_subconcentration(&e1, &a, &b).unwrap().holds());
        let q = quotient_concentration(&e1, &a, &b).unwrap();
        let expected =
            MorphismPartition::from_labels(&e1, &[vec!["0_C", "1_C", "0_D", "2_D"], vec!["1_D", "3_D"]]).unwrap();
        assert_eq!(q, expected);
        assert!(a.refines(&q));
        let m = concentration_monoid(&e1, &q).unwrap().monoid;
        assert!(are_isomorphic(&m, &FinMonoid::cyclic(2)).unwrap());
    }

    #[test]
    fn quotient_by_identity_sub() {
        let (e1, a) = e1_with('a');
        let id = SubcategoryData::identity_at(&e1, ObjectId(1));
        assert!(is_normal_subconcentration(&e1, &a, &id).unwrap().holds());
        assert_eq!(quotient_concentration(&e1, &a, &id).unwrap(), a);
    }

    #[test]
    fn non_normal_order_two_subgroup_of_s3() {
        let s3 = FinMonoid::symmetric(3);
        let bg = Arc::new(FinCategory::one_object(&s3));
        let d = MorphismPartition::discrete(&bg);
        let t = (0..6).find(|&x| s3.order(x) == 2).unwrap();
        let sub = SubcategoryData::new([ObjectId(0)], [MorphismId(s3.identity()), MorphismId(t)]);
        let out = is_normal_subconcentration(&bg, &d, &sub).unwrap();
        assert!(!out.holds());
        assert!(matches!(quotient_concentration(&bg, &d, &sub), Err(Error::NotNormal(_))));
    }

    #[test]
    fn z4_quotient_matches_monoid_quotient() {
        let z4 = FinMonoid::cyclic(4);
        let bg = Arc::new(FinCategory::one_object(&z4));
        let d = MorphismPartition::discrete(&bg);
        let sub = SubcategoryData::new([ObjectId(0)], [MorphismId(0), MorphismId(2)]);
        let q = quotient_concentration(&bg, &d, &sub).unwrap();
        let m = concentration_monoid(&bg, &q).unwrap().monoid;
        let direct = quotient_by_normal_submonoid(&z4, &[0, 2]).unwrap().monoid;
        assert!(are_isomorphic(&m, &direct).unwrap());
    }

    #[test]
    fn inversion_action_gives_s3() {
        let z3 = FinMonoid::cyclic(3);
        let z2 = FinMonoid::cyclic(2);
        let maps = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let action = CatAction::from_monoid_action(&z3, &z2, &maps).unwrap();
        let dc = MorphismPartition::discrete(action.fiber());
        let dd = MorphismPartition::discrete(action.base());
        let (sd, part) = semidirect_category(&action, &dc, &dd).unwrap();
        assert_eq!(sd.category.num_morphisms(), 6);
        let m = concentration_monoid(&sd.category, &part).unwrap().monoid;
        assert!(are_isomorphic(&m, &FinMonoid::symmetric(3)).unwrap());
        let phi = induced_action(&action, &dc, &dd).unwrap();
        assert!(are_isomorphic(&m, &semidirect_monoid(&z3, &z2, &phi).unwrap()).unwrap());
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let (e1, a) = e1_with('a');
        let z3 = Arc::new(FinCategory::one_object(&FinMonoid::cyclic(3)));
        let action = CatAction::trivial(z3.clone(), e1.clone());
        let (sd, part) = semidirect_category(&action, &a, &MorphismPartition::discrete(&z3)).unwrap();
        let m = concentration_monoid(&sd.category, &part).unwrap().monoid;
        let expected = FinMonoid::direct_product(&FinMonoid::cyclic(4), &FinMonoid::cyclic(3));
        assert!(are_isomorphic(&m, &expected).unwrap());
    }

    #[test]
    fn non_functorial_action_is_rejected() {
        let z3 = FinMonoid::cyclic(3);
        let z4 = FinMonoid::cyclic(4);
        // inversion on Z/3 for the generator of Z/4 would need φ(2) = id
        let maps = vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1], vec![0, 2, 1]];
        assert!(matches!(
            CatAction::from_monoid_action(&z3, &z4, &maps),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn incompatible_action_is_refused() {
        // inversion on Z/4 preserves the cosets of {0,2}
        let z4 = FinMonoid::cyclic(4);
        let z2 = FinMonoid::cyclic(2);
        let maps = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        let action = CatAction::from_monoid_action(&z4, &z2, &maps).unwrap();
        let cosets = MorphismPartition::from_class_of(&[0, 1, 0, 1]);
        assert!(check_compatible(&action, &cosets, &MorphismPartition::discrete(action.base()))
            .unwrap()
            .holds());
        // relating both base elements forces φ(0) and φ(1) to agree on classes
        let fiber_discrete = MorphismPartition::discrete(action.fiber());
        let base_trivial = MorphismPartition::trivial(action.base());
        let out = check_compatible(&action, &fiber_discrete, &base_trivial).unwrap();
        assert_eq!(out.witness(), Some(&[MorphismId(1), MorphismId(1), MorphismId(0), MorphismId(1)]));
        assert!(matches!(
            semidirect_category(&action, &fiber_discrete, &base_trivial),
            Err(Error::IncompatibleAction(_))
        ));
    }
}
