//! 2-lifting functors, pullbacks of concentrations, concentrating functors,
//! multivalued fibrations and the adjunction between categories with
//! concentration and monoids.

use std::sync::Arc;

use crate::category::{FinCategory, Functor, MorphismId, ObjectId};
use crate::concentration::{require_concentration, MorphismPartition, Outcome};
use crate::error::{Error, Result};
use crate::monoid::{concentration_monoid, find_isomorphism, induced_hom, FinMonoid};

fn require_functor(functor: &Functor) -> Result<()> {
    match functor.check().violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidFunctor(v.to_string())),
    }
}

/// Every composable pair `(g₁, g₂)` of the target is the image of a
/// composable pair of the source. Witness: the first pair (in index order)
/// with no lift.
pub fn check_2_lifting(functor: &Functor) -> Result<Outcome<(MorphismId, MorphismId)>> {
    require_functor(functor)?;
    let t = functor.target();
    let n = t.num_morphisms();
    let mut lifted = vec![false; n * n];
    for (f1, f2, _) in functor.source().composable_pairs() {
        lifted[functor.mor(f1).0 * n + functor.mor(f2).0] = true;
    }
    Ok(t.composable_pairs()
        .find(|&(g1, g2, _)| !lifted[g1.0 * n + g2.0])
        .map_or(Outcome::Holds, |(g1, g2, _)| Outcome::Fails((g1, g2))))
}

/// Every base morphism `g: B₀ → B₁` and every object `E₁` over `B₁` admit
/// some `f: E₀ → E₁` with `F(f) = g`. Witness: `(g, E₁)`.
pub fn check_multivalued_fibration(functor: &Functor) -> Result<Outcome<(MorphismId, ObjectId)>> {
    require_functor(functor)?;
    let (s, t) = (functor.source(), functor.target());
    for g in t.morphisms() {
        for e1 in s.objects().filter(|&e| functor.obj(e) == t.tgt(g)) {
            if !s.morphisms().any(|f| s.tgt(f) == e1 && functor.mor(f) == g) {
                return Ok(Outcome::Fails((g, e1)));
            }
        }
    }
    Ok(Outcome::Holds)
}

/// Witness: the first target morphism not in the image.
pub fn check_surjective_on_morphisms(functor: &Functor) -> Outcome<MorphismId> {
    let mut hit = vec![false; functor.target().num_morphisms()];
    for &m in functor.mor_map() {
        hit[m.0] = true;
    }
    match hit.iter().position(|h| !h) {
        None => Outcome::Holds,
        Some(m) => Outcome::Fails(MorphismId(m)),
    }
}

/// `f ~ g` iff `F(f) ~ F(g)`. Requires a 2-lifting functor and a
/// concentration on the target; the result is checked to be a concentration.
pub fn pullback_concentration(functor: &Functor, target_part: &MorphismPartition) -> Result<MorphismPartition> {
    if let Outcome::Fails((a, b)) = check_2_lifting(functor)? {
        return Err(Error::NotTwoLifting(a, b));
    }
    require_concentration(functor.target(), target_part)?;
    let keys: Vec<usize> = functor.mor_map().iter().map(|&m| target_part.class_of(m)).collect();
    let part = MorphismPartition::from_class_of(&keys);
    require_concentration(functor.source(), &part)
        .map_err(|e| Error::Internal(format!("pullback along a 2-lifting functor: {e}")))?;
    Ok(part)
}

/// The canonical functor to the one-object category of the concentration
/// monoid: every object goes to `*`, every morphism to its class.
#[derive(Debug, Clone)]
pub struct ConcentratingFunctor {
    pub monoid: FinMonoid,
    pub target: Arc<FinCategory>,
    pub functor: Functor,
}

pub fn concentrating_functor(cat: &FinCategory, part: &MorphismPartition) -> Result<ConcentratingFunctor> {
    concentrating_functor_arc(Arc::new(cat.clone()), part)
}

pub fn concentrating_functor_arc(cat: Arc<FinCategory>, part: &MorphismPartition) -> Result<ConcentratingFunctor> {
    let monoid = concentration_monoid(&cat, part)?.monoid;
    let target = Arc::new(FinCategory::one_object(&monoid));
    let obj_map = vec![ObjectId(0); cat.num_objects()];
    let mor_map = part.class_map().iter().map(|&c| MorphismId(c)).collect();
    let functor = Functor::new(cat, target.clone(), obj_map, mor_map)?;
    Ok(ConcentratingFunctor {
        monoid,
        target,
        functor,
    })
}

/// A 2-lifting functor to the one-object category of the concentration
/// monoid, or of `target` when given, composed with the least isomorphism
/// onto it.
pub fn externalize(cat: &FinCategory, part: &MorphismPartition, target: Option<&FinMonoid>) -> Result<Functor> {
    let conc = concentrating_functor(cat, part)?;
    let Some(target) = target else {
        return Ok(conc.functor);
    };
    let iso = find_isomorphism(&conc.monoid, target)?.ok_or_else(|| {
        Error::InvalidMonoid("the concentration monoid is not isomorphic to the requested monoid".into())
    })?;
    let target_cat = Arc::new(FinCategory::one_object(target));
    let mor_map = conc.functor.mor_map().iter().map(|m| MorphismId(iso[m.0])).collect();
    Functor::new(
        conc.functor.source().clone(),
        target_cat,
        conc.functor.obj_map().to_vec(),
        mor_map,
    )
}

/// Pullback of the discrete concentration along a 2-lifting functor into a
/// one-object category.
pub fn internalize(functor: &Functor) -> Result<MorphismPartition> {
    if functor.target().num_objects() != 1 {
        return Err(Error::InvalidFunctor(format!(
            "target must have one object, it has {}",
            functor.target().num_objects()
        )));
    }
    pullback_concentration(functor, &MorphismPartition::discrete(functor.target()))
}

/// Both triangle identities of the adjunction at `(cat, part)`, with the
/// counit the identity under `x ↔ [x]`:
///
/// - the homomorphism induced by the concentrating functor is the identity
///   of the concentration monoid;
/// - the concentrating functor of the one-object category of that monoid,
///   with the discrete concentration, is the identity functor.
pub fn verify_adjunction_triangles(cat: &FinCategory, part: &MorphismPartition) -> Result<bool> {
    let conc = concentrating_functor(cat, part)?;
    let discrete = MorphismPartition::discrete(&conc.target);
    let hom = induced_hom(&conc.functor, part, &discrete)?;
    // element j of the target's monoid is the class {x} of the discrete partition; j ↦ x
    let identify: Vec<usize> = (0..hom.target().size()).map(|j| discrete.class(j)[0].0).collect();
    let monoid_side = hom.target().is_isomorphism(&conc.monoid, &identify)
        && hom.map().iter().enumerate().all(|(i, &j)| identify[j] == i);
    Ok(monoid_side && verify_adjunction_triangles_monoid(&conc.monoid)?)
}

/// The unit at the one-object category of `monoid` is the identity functor,
/// and the counit identification `x ↔ [x]` is a monoid isomorphism.
pub fn verify_adjunction_triangles_monoid(monoid: &FinMonoid) -> Result<bool> {
    let bg = Arc::new(FinCategory::one_object(monoid));
    let discrete = MorphismPartition::discrete(&bg);
    let conc = concentrating_functor_arc(bg.clone(), &discrete)?;
    // counit: class c of the discrete partition ↦ its only member, an element of `monoid`
    let counit: Vec<usize> = (0..conc.monoid.size()).map(|c| discrete.class(c)[0].0).collect();
    let counit_is_iso = conc.monoid.is_isomorphism(monoid, &counit);
    let unit_is_identity = conc.functor.obj_map().iter().all(|o| o.0 == 0)
        && conc.functor.mor_map().iter().enumerate().all(|(i, m)| counit[m.0] == i)
        && conc.target.same_shape(&bg);
    Ok(counit_is_iso && unit_is_identity)
}
