//! Explicit finite categories and functors between them.
//!
//! Composition follows the usual `f ∘ g` convention: `compose(f, g)` means
//! "first `g`, then `f`" and is defined exactly when `src(f) == tgt(g)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monoid::FinMonoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphismId(pub usize);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorphismId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorphismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub label: String,
    pub src: ObjectId,
    pub tgt: ObjectId,
}

impl Morphism {
    pub fn new(label: impl Into<String>, src: ObjectId, tgt: ObjectId) -> Self {
        Morphism {
            label: label.into(),
            src,
            tgt,
        }
    }
}

/// A finite category stored as an explicit composition table.
///
/// Construction only checks that the data is structurally well formed
/// (indices in range, one identity per object, no duplicate table entries).
/// The category axioms are decided by [`FinCategory::validate`], so that a
/// broken table can still be loaded and reported on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphismId>,
    // row-major, `comp[f * n + g]` holds `f ∘ g`
    comp: Vec<Option<MorphismId>>,
}

/// One violated category axiom, with the morphisms that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    IdentityEndpoints { object: ObjectId, identity: MorphismId },
    MissingComposite { f: MorphismId, g: MorphismId },
    SpuriousComposite { f: MorphismId, g: MorphismId },
    CompositeEndpoints { f: MorphismId, g: MorphismId, fg: MorphismId },
    LeftUnit { f: MorphismId },
    RightUnit { f: MorphismId },
    Associativity { f: MorphismId, g: MorphismId, h: MorphismId },
}

impl fmt::Display for Violation {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityEndpoints { object, identity } => {
                write!(fmt, "identity {identity} of {object} is not an endomorphism of it")
            }
            Violation::MissingComposite { f, g } => write!(fmt, "{f} ∘ {g} is composable but has no entry"),
            Violation::SpuriousComposite { f, g } => write!(fmt, "{f} ∘ {g} has an entry but is not composable"),
            Violation::CompositeEndpoints { f, g, fg } => {
                write!(fmt, "{f} ∘ {g} = {fg} has the wrong source or target")
            }
            Violation::LeftUnit { f } => write!(fmt, "id ∘ {f} != {f}"),
            Violation::RightUnit { f } => write!(fmt, "{f} ∘ id != {f}"),
            Violation::Associativity { f, g, h } => write!(fmt, "({f} ∘ {g}) ∘ {h} != {f} ∘ ({g} ∘ {h})"),
        }
    }
}

/// Outcome of an axiom scan: empty means every axiom holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FinCategory {
    /// Builds a category from an explicit list of composition triples `(f, g, f∘g)`.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorphismId>,
        composition: impl IntoIterator<Item = (MorphismId, MorphismId, MorphismId)>,
    ) -> Result<Self> {
        let n = morphisms.len();
        let mut cat = Self::skeleton(objects, morphisms, identities)?;
        for (f, g, fg) in composition {
            for m in [f, g, fg] {
                cat.check_morphism(m)?;
            }
            let slot = &mut cat.comp[f.0 * n + g.0];
            if slot.is_some() {
                return Err(Error::MalformedCategory(format!(
                    "duplicate composition entry for ({}, {})",
                    cat.morphisms[f.0].label, cat.morphisms[g.0].label
                )));
            }
            *slot = Some(fg);
        }
        Ok(cat)
    }

    /// Builds a category by evaluating `compose` on every pair with `src(f) == tgt(g)`.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorphismId>,
        mut compose: impl FnMut(MorphismId, MorphismId) -> MorphismId,
    ) -> Result<Self> {
        let n = morphisms.len();
        let mut cat = Self::skeleton(objects, morphisms, identities)?;
        for f in 0..n {
            for g in 0..n {
                if cat.morphisms[f].src == cat.morphisms[g].tgt {
                    let fg = compose(MorphismId(f), MorphismId(g));
                    cat.check_morphism(fg)?;
                    cat.comp[f * n + g] = Some(fg);
                }
            }
        }
        Ok(cat)
    }

    fn skeleton(objects: Vec<String>, morphisms: Vec<Morphism>, identities: Vec<MorphismId>) -> Result<Self> {
        if identities.len() != objects.len() {
            return Err(Error::MalformedCategory(format!(
                "{} identities given for {} objects",
                identities.len(),
                objects.len()
            )));
        }
        let n = morphisms.len();
        let cat = FinCategory {
            objects,
            morphisms,
            identities,
            comp: vec![None; n * n],
        };
        for m in &cat.morphisms {
            cat.check_object(m.src)?;
            cat.check_object(m.tgt)?;
        }
        for &id in &cat.identities {
            cat.check_morphism(id)?;
        }
        Ok(cat)
    }

    pub fn check_object(&self, o: ObjectId) -> Result<()> {
        if o.0 < self.objects.len() {
            Ok(())
        } else {
            Err(Error::ObjectOutOfRange {
                index: o.0,
                len: self.objects.len(),
            })
        }
    }

    pub fn check_morphism(&self, m: MorphismId) -> Result<()> {
        if m.0 < self.morphisms.len() {
            Ok(())
        } else {
            Err(Error::MorphismOutOfRange {
                index: m.0,
                len: self.morphisms.len(),
            })
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjectId> {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = MorphismId> {
        (0..self.morphisms.len()).map(MorphismId)
    }

    pub fn object_label(&self, o: ObjectId) -> &str {
        &self.objects[o.0]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: MorphismId) -> &Morphism {
        &self.morphisms[m.0]
    }

    pub fn morphism_list(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn label(&self, m: MorphismId) -> &str {
        &self.morphisms[m.0].label
    }

    pub fn src(&self, m: MorphismId) -> ObjectId {
        self.morphisms[m.0].src
    }

    pub fn tgt(&self, m: MorphismId) -> ObjectId {
        self.morphisms[m.0].tgt
    }

    pub fn identity(&self, o: ObjectId) -> MorphismId {
        self.identities[o.0]
    }

    pub fn identities(&self) -> &[MorphismId] {
        &self.identities
    }

    pub fn is_identity(&self, m: MorphismId) -> bool {
        self.identities.contains(&m)
    }

    pub fn object_by_label(&self, label: &str) -> Option<ObjectId> {
        self.objects.iter().position(|l| l == label).map(ObjectId)
    }

    pub fn morphism_by_label(&self, label: &str) -> Option<MorphismId> {
        self.morphisms.iter().position(|m| m.label == label).map(MorphismId)
    }

    pub fn composable(&self, f: MorphismId, g: MorphismId) -> bool {
        self.src(f) == self.tgt(g)
    }

    /// `f ∘ g`, or `None` when `src(f) != tgt(g)`.
    pub fn compose(&self, f: MorphismId, g: MorphismId) -> Option<MorphismId> {
        if self.composable(f, g) {
            self.comp[f.0 * self.morphisms.len() + g.0]
        } else {
            None
        }
    }

    /// Raw table entry, including entries for non-composable pairs.
    fn table(&self, f: MorphismId, g: MorphismId) -> Option<MorphismId> {
        self.comp[f.0 * self.morphisms.len() + g.0]
    }

    /// All composable pairs `(f, g)` together with `f ∘ g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorphismId, MorphismId, MorphismId)> + '_ {
        let n = self.morphisms.len();
        (0..n * n).filter_map(move |i| {
            let (f, g) = (MorphismId(i / n), MorphismId(i % n));
            self.compose(f, g).map(|fg| (f, g, fg))
        })
    }

    /// The composition triples, in table order. Used for serialization.
    pub fn composition_triples(&self) -> Vec<(MorphismId, MorphismId, MorphismId)> {
        let n = self.morphisms.len();
        (0..n * n)
            .filter_map(|i| self.comp[i].map(|fg| (MorphismId(i / n), MorphismId(i % n), fg)))
            .collect()
    }

    pub fn hom(&self, a: ObjectId, b: ObjectId) -> Vec<MorphismId> {
        self.morphisms().filter(|&m| self.src(m) == a && self.tgt(m) == b).collect()
    }

    /// A two-sided inverse of `f` inside the category, if one exists.
    pub fn inverse(&self, f: MorphismId) -> Option<MorphismId> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a).into_iter().find(|&g| {
            self.compose(g, f) == Some(self.identity(a)) && self.compose(f, g) == Some(self.identity(b))
        })
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|f| self.inverse(f).is_some())
    }

    /// Connectedness of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.objects.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(o) = stack.pop() {
            for m in &self.morphisms {
                for (x, y) in [(m.src.0, m.tgt.0), (m.tgt.0, m.src.0)] {
                    if x == o && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Nonempty with exactly one morphism in every hom-set (codiscrete),
    /// i.e. equivalent to the one-morphism category.
    pub fn is_equivalent_to_trivial(&self) -> bool {
        let n = self.objects.len();
        if n == 0 {
            return false;
        }
        let mut counts = vec![0usize; n * n];
        for m in &self.morphisms {
            counts[m.src.0 * n + m.tgt.0] += 1;
        }
        counts.into_iter().all(|c| c == 1)
    }

    /// Decides the category axioms and reports every violation found.
    pub fn validate(&self) -> ValidationReport<Violation> {
        let mut violations = Vec::new();
        for o in self.objects() {
            let id = self.identity(o);
            if self.src(id) != o || self.tgt(id) != o {
                violations.push(Violation::IdentityEndpoints { object: o, identity: id });
            }
        }
        for f in self.morphisms() {
            for g in self.morphisms() {
                match (self.composable(f, g), self.table(f, g)) {
                    (true, None) => violations.push(Violation::MissingComposite { f, g }),
                    (false, Some(_)) => violations.push(Violation::SpuriousComposite { f, g }),
                    (true, Some(fg)) if self.src(fg) != self.src(g) || self.tgt(fg) != self.tgt(f) => {
                        violations.push(Violation::CompositeEndpoints { f, g, fg })
                    }
                    _ => {}
                }
            }
        }
        for f in self.morphisms() {
            if self.compose(f, self.identity(self.src(f))) != Some(f) {
                violations.push(Violation::RightUnit { f });
            }
            if self.compose(self.identity(self.tgt(f)), f) != Some(f) {
                violations.push(Violation::LeftUnit { f });
            }
        }
        for (f, g, fg) in self.composable_pairs() {
            for h in self.morphisms() {
                let Some(gh) = self.compose(g, h) else { continue };
                let left = self.compose(fg, h);
                let right = self.compose(f, gh);
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        violations.push(Violation::Associativity { f, g, h });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Equal up to object and morphism labels.
    pub fn same_shape(&self, other: &FinCategory) -> bool {
        self.objects.len() == other.objects.len()
            && self.identities == other.identities
            && self.comp == other.comp
            && self
                .morphisms
                .iter()
                .zip(&other.morphisms)
                .all(|(a, b)| a.src == b.src && a.tgt == b.tgt)
            && self.morphisms.len() == other.morphisms.len()
    }

    /// The one-object category of a monoid: morphisms are the elements,
    /// composition is multiplication.
    pub fn one_object(monoid: &FinMonoid) -> FinCategory {
        let morphisms = (0..monoid.size())
            .map(|x| Morphism::new(monoid.label(x), ObjectId(0), ObjectId(0)))
            .collect();
        FinCategory::from_fn(
            vec!["*".to_string()],
            morphisms,
            vec![MorphismId(monoid.identity())],
            |f, g| MorphismId(monoid.mul(f.0, g.0)),
        )
        .expect("monoid table indices are in range")
    }
}

/// Alias matching the one-object construction used throughout the crate.
pub fn one_object_category(monoid: &FinMonoid) -> FinCategory {
    FinCategory::one_object(monoid)
}

/// An object map and a morphism map between two finite categories.
#[derive(Debug, Clone)]
pub struct Functor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<ObjectId>,
    mor_map: Vec<MorphismId>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
    }
}

impl Eq for Functor {}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorViolation {
    Endpoints { morphism: MorphismId },
    Identity { object: ObjectId },
    Composition { f: MorphismId, g: MorphismId },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Endpoints { morphism } => {
                write!(fmt, "image of {morphism} does not run between the images of its endpoints")
            }
            FunctorViolation::Identity { object } => write!(fmt, "identity of {object} is not sent to an identity"),
            FunctorViolation::Composition { f, g } => write!(fmt, "F({f} ∘ {g}) != F({f}) ∘ F({g})"),
        }
    }
}

impl Functor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjectId>,
        mor_map: Vec<MorphismId>,
    ) -> Result<Self> {
        if obj_map.len() != source.num_objects() || mor_map.len() != source.num_morphisms() {
            return Err(Error::InvalidFunctor(format!(
                "maps have lengths {}/{} but the source has {} objects and {} morphisms",
                obj_map.len(),
                mor_map.len(),
                source.num_objects(),
                source.num_morphisms()
            )));
        }
        for &o in &obj_map {
            target.check_object(o)?;
        }
        for &m in &mor_map {
            target.check_morphism(m)?;
        }
        Ok(Functor {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    pub fn identity(cat: Arc<FinCategory>) -> Self {
        let obj_map = cat.objects().collect();
        let mor_map = cat.morphisms().collect();
        Functor {
            source: cat.clone(),
            target: cat,
            obj_map,
            mor_map,
        }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn obj(&self, o: ObjectId) -> ObjectId {
        self.obj_map[o.0]
    }

    pub fn mor(&self, m: MorphismId) -> MorphismId {
        self.mor_map[m.0]
    }

    pub fn obj_map(&self) -> &[ObjectId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorphismId] {
        &self.mor_map
    }

    /// Checks endpoint, identity and composition preservation.
    pub fn check(&self) -> ValidationReport<FunctorViolation> {
        let (s, t) = (&*self.source, &*self.target);
        let mut violations = Vec::new();
        for m in s.morphisms() {
            let fm = self.mor(m);
            if t.src(fm) != self.obj(s.src(m)) || t.tgt(fm) != self.obj(s.tgt(m)) {
                violations.push(FunctorViolation::Endpoints { morphism: m });
            }
        }
        for o in s.objects() {
            if self.mor(s.identity(o)) != t.identity(self.obj(o)) {
                violations.push(FunctorViolation::Identity { object: o });
            }
        }
        for (f, g, fg) in s.composable_pairs() {
            if t.compose(self.mor(f), self.mor(g)) != Some(self.mor(fg)) {
                violations.push(FunctorViolation::Composition { f, g });
            }
        }
        ValidationReport { violations }
    }

    pub fn is_identity(&self) -> bool {
        same_category(&self.source, &self.target)
            && self.obj_map.iter().enumerate().all(|(i, o)| o.0 == i)
            && self.mor_map.iter().enumerate().all(|(i, m)| m.0 == i)
    }

    pub fn is_surjective_on_morphisms(&self) -> bool {
        let mut hit = vec![false; self.target.num_morphisms()];
        for m in &self.mor_map {
            hit[m.0] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// The strong inverse, when both maps are bijections whose inverses form a functor.
    pub fn strong_inverse(&self) -> Option<Functor> {
        let obj_inv = invert(self.obj_map.iter().map(|o| o.0), self.target.num_objects())?;
        let mor_inv = invert(self.mor_map.iter().map(|m| m.0), self.target.num_morphisms())?;
        let inverse = Functor {
            source: self.target.clone(),
            target: self.source.clone(),
            obj_map: obj_inv.into_iter().map(ObjectId).collect(),
            mor_map: mor_inv.into_iter().map(MorphismId).collect(),
        };
        inverse.check().ok().then_some(inverse)
    }
}

fn invert(map: impl ExactSizeIterator<Item = usize>, codomain: usize) -> Option<Vec<usize>> {
    if map.len() != codomain {
        return None;
    }
    let mut inv = vec![usize::MAX; codomain];
    for (i, j) in map.enumerate() {
        if inv[j] != usize::MAX {
            return None;
        }
        inv[j] = i;
    }
    Some(inv)
}

pub fn check_functor(f: &Functor) -> ValidationReport<FunctorViolation> {
    f.check()
}

/// `outer ∘ inner`: apply `inner` first.
pub fn compose_functors(outer: &Functor, inner: &Functor) -> Result<Functor> {
    if !same_category(inner.target(), outer.source()) {
        return Err(Error::InvalidFunctor(
            "target of the inner functor is not the source of the outer functor".into(),
        ));
    }
    Ok(Functor {
        source: inner.source.clone(),
        target: outer.target.clone(),
        obj_map: inner.obj_map.iter().map(|&o| outer.obj(o)).collect(),
        mor_map: inner.mor_map.iter().map(|&m| outer.mor(m)).collect(),
    })
}

pub fn is_strongly_invertible(f: &Functor) -> Option<Functor> {
    f.strong_inverse()
}
