//! Finite groupoid models: torsor groupoids standing in for fundamental
//! groupoids, base-point path families and the concentrations they induce,
//! and the codiscrete cover of a group.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::category::{FinCategory, Functor, Morphism, MorphismId, ObjectId};
use crate::concentration::{require_concentration, MorphismPartition};
use crate::error::{Error, Result};
use crate::lifting::pullback_concentration;
use crate::monoid::{concentration_monoid, FinMonoid, MonoidHom};

fn require_group(g: &FinMonoid) -> Result<()> {
    if g.is_group() {
        Ok(())
    } else {
        Err(Error::NotAGroup("some element has no inverse".into()))
    }
}

/// Objects `1..=n`; `Mor(a, b) = {(a, b, g) : g ∈ G}` with
/// `(b, c, h) ∘ (a, b, g) = (a, c, hg)`. Morphism `(a, b, g)` has index
/// `(a·n + b)·|G| + g` (objects counted from 0).
pub fn torsor_groupoid(group: &FinMonoid, n: usize) -> Result<FinCategory> {
    require_group(group)?;
    if n == 0 {
        return Err(Error::MalformedCategory("a torsor groupoid needs at least one object".into()));
    }
    let k = group.size();
    let mut morphisms = Vec::with_capacity(n * n * k);
    for a in 0..n {
        for b in 0..n {
            for g in 0..k {
                morphisms.push(Morphism::new(
                    format!("({},{},{})", a + 1, b + 1, group.label(g)),
                    ObjectId(a),
                    ObjectId(b),
                ));
            }
        }
    }
    let identities = (0..n).map(|a| MorphismId((a * n + a) * k + group.identity())).collect();
    FinCategory::from_fn((1..=n).map(|i| i.to_string()).collect(), morphisms, identities, |f, g| {
        let (b, c, h) = (f.0 / k / n, f.0 / k % n, f.0 % k);
        let (a, _, x) = (g.0 / k / n, g.0 / k % n, g.0 % k);
        debug_assert_eq!(b, g.0 / k % n);
        MorphismId((a * n + c) * k + group.mul(h, x))
    })
}

/// The codiscrete groupoid on `n` objects: exactly one morphism `a → b` for
/// every ordered pair.
pub fn codiscrete(n: usize) -> FinCategory {
    codiscrete_labelled((1..=n).map(|i| i.to_string()).collect())
}

fn codiscrete_labelled(objects: Vec<String>) -> FinCategory {
    let n = objects.len();
    let morphisms = (0..n * n)
        .map(|i| Morphism::new(format!("({},{})", objects[i / n], objects[i % n]), ObjectId(i / n), ObjectId(i % n)))
        .collect();
    let identities = (0..n).map(|a| MorphismId(a * n + a)).collect();
    // index a·n + b is the morphism a → b
    FinCategory::from_fn(objects, morphisms, identities, |f, g| MorphismId(g.0 / n * n + f.0 % n))
        .expect("codiscrete groupoid is well formed")
}

/// A chosen path `θ^y: x₀ → y` for every object `y`, with `θ^{x₀}` the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaFamily {
    base: ObjectId,
    theta: Vec<MorphismId>,
}

impl ThetaFamily {
    pub fn new(gpd: &FinCategory, base: ObjectId, theta: Vec<MorphismId>) -> Result<Self> {
        gpd.check_object(base)?;
        if theta.len() != gpd.num_objects() {
            return Err(Error::InvalidTheta(format!(
                "{} paths given for {} objects",
                theta.len(),
                gpd.num_objects()
            )));
        }
        for (y, &t) in theta.iter().enumerate() {
            gpd.check_morphism(t)?;
            if gpd.src(t) != base || gpd.tgt(t) != ObjectId(y) {
                return Err(Error::InvalidTheta(format!(
                    "path to object {} does not run from the base point to it",
                    gpd.object_label(ObjectId(y))
                )));
            }
        }
        if theta[base.0] != gpd.identity(base) {
            return Err(Error::InvalidTheta("the path to the base point is not the identity".into()));
        }
        Ok(ThetaFamily { base, theta })
    }

    pub fn base(&self) -> ObjectId {
        self.base
    }

    pub fn path(&self, y: ObjectId) -> MorphismId {
        self.theta[y.0]
    }

    pub fn paths(&self) -> &[MorphismId] {
        &self.theta
    }
}

/// Picks every `θ^y` uniformly from `Mor(x₀, y)` with a seeded generator.
pub fn sample_theta(gpd: &FinCategory, base: ObjectId, seed: u64) -> Result<ThetaFamily> {
    require_connected_groupoid(gpd)?;
    gpd.check_object(base)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let theta = gpd
        .objects()
        .map(|y| {
            if y == base {
                gpd.identity(base)
            } else {
                *gpd.hom(base, y).choose(&mut rng).expect("connected")
            }
        })
        .collect();
    ThetaFamily::new(gpd, base, theta)
}

fn require_connected_groupoid(gpd: &FinCategory) -> Result<()> {
    if !gpd.is_groupoid() {
        return Err(Error::NotGroupoid("some morphism has no inverse".into()));
    }
    if !gpd.is_connected() {
        return Err(Error::NotGroupoid("the groupoid is not connected".into()));
    }
    Ok(())
}

fn inv(gpd: &FinCategory, m: MorphismId) -> MorphismId {
    gpd.inverse(m).expect("groupoid")
}

fn comp(gpd: &FinCategory, chain: &[MorphismId]) -> MorphismId {
    chain
        .iter()
        .copied()
        .reduce(|acc, m| gpd.compose(acc, m).expect("chain is composable"))
        .expect("nonempty chain")
}

/// The loop `(θ^b)⁻¹ ∘ α ∘ θ^a` at the base point, for `α: a → b`.
pub fn theta_loop(gpd: &FinCategory, theta: &ThetaFamily, alpha: MorphismId) -> MorphismId {
    let (a, b) = (gpd.src(alpha), gpd.tgt(alpha));
    comp(gpd, &[inv(gpd, theta.path(b)), alpha, theta.path(a)])
}

/// `α ~ β` iff their θ-loops at the base point coincide.
pub fn theta_concentration(gpd: &FinCategory, theta: &ThetaFamily) -> Result<MorphismPartition> {
    require_connected_groupoid(gpd)?;
    let keys: Vec<MorphismId> = gpd.morphisms().map(|m| theta_loop(gpd, theta, m)).collect();
    let part = MorphismPartition::from_class_of(&keys);
    require_concentration(gpd, &part).map_err(|e| Error::Internal(format!("loop relation: {e}")))?;
    Ok(part)
}

/// `Mor(x₀, x₀)` under composition, labelled by morphism labels. Element `i`
/// is the `i`-th loop in index order.
pub fn vertex_group(gpd: &FinCategory, base: ObjectId) -> Result<(FinMonoid, Vec<MorphismId>)> {
    gpd.check_object(base)?;
    let loops = gpd.hom(base, base);
    let index = |m: MorphismId| loops.iter().position(|&l| l == m).expect("closed under composition");
    let labels = loops.iter().map(|&m| gpd.label(m).to_string()).collect();
    let group = FinMonoid::from_fn(labels, |a, b| index(gpd.compose(loops[a], loops[b]).expect("loops compose")))?;
    Ok((group, loops))
}

/// The explicit map `[α] ↦ (θ^b)⁻¹ ∘ α ∘ θ^a` from the concentration monoid
/// of the θ-concentration to the vertex group, checked to be a bijective
/// homomorphism.
pub fn theta_isomorphism(gpd: &FinCategory, theta: &ThetaFamily) -> Result<MonoidHom> {
    let part = theta_concentration(gpd, theta)?;
    let monoid = Arc::new(concentration_monoid(gpd, &part)?.monoid);
    let (group, loops) = vertex_group(gpd, theta.base())?;
    let map = part
        .classes()
        .iter()
        .map(|c| {
            let l = theta_loop(gpd, theta, c[0]);
            loops.iter().position(|&x| x == l).expect("θ-loop is a loop at the base point")
        })
        .collect();
    let hom = MonoidHom::new(monoid, Arc::new(group), map)?;
    if !hom.is_bijective() {
        return Err(Error::Internal("θ-loop map is not a bijection".into()));
    }
    Ok(hom)
}

/// `α ↦ σ^b ∘ ρ ∘ (θ^b)⁻¹ ∘ α ∘ θ^a ∘ ρ⁻¹ ∘ (σ^a)⁻¹` for `α: a → b`, where
/// `θ` is based at `x₀`, `σ` at `z₀` and `ρ: x₀ → z₀`. Objects are fixed.
pub fn theta_change_functor(
    gpd: &Arc<FinCategory>,
    theta: &ThetaFamily,
    sigma: &ThetaFamily,
    rho: MorphismId,
) -> Result<Functor> {
    require_connected_groupoid(gpd)?;
    gpd.check_morphism(rho)?;
    if gpd.src(rho) != theta.base() || gpd.tgt(rho) != sigma.base() {
        return Err(Error::InvalidTheta("ρ must run from the first base point to the second".into()));
    }
    let rho_inv = inv(gpd, rho);
    let mor_map = gpd
        .morphisms()
        .map(|alpha| {
            let (a, b) = (gpd.src(alpha), gpd.tgt(alpha));
            comp(
                gpd,
                &[
                    sigma.path(b),
                    rho,
                    inv(gpd, theta.path(b)),
                    alpha,
                    theta.path(a),
                    rho_inv,
                    inv(gpd, sigma.path(a)),
                ],
            )
        })
        .collect();
    Functor::new(gpd.clone(), gpd.clone(), gpd.objects().collect(), mor_map)
}

/// The codiscrete groupoid on the elements of `G` over the one-object
/// category of `G`, with `p(g, h) = h·g⁻¹`, and the pullback of the
/// discrete concentration along `p`.
#[derive(Debug, Clone)]
pub struct CodiscreteCover {
    pub cover: Arc<FinCategory>,
    pub projection: Functor,
    pub partition: MorphismPartition,
}

pub fn codiscrete_cover(group: &FinMonoid) -> Result<CodiscreteCover> {
    require_group(group)?;
    let n = group.size();
    let cover = Arc::new(codiscrete_labelled(group.labels().to_vec()));
    let base = Arc::new(FinCategory::one_object(group));
    let mor_map = cover
        .morphisms()
        .map(|m| {
            let (g, h) = (m.0 / n, m.0 % n);
            MorphismId(group.mul(h, group.inverse(g).expect("group")))
        })
        .collect();
    let projection = Functor::new(cover.clone(), base.clone(), vec![ObjectId(0); n], mor_map)?;
    let partition = pullback_concentration(&projection, &MorphismPartition::discrete(&base))?;
    Ok(CodiscreteCover {
        cover,
        projection,
        partition,
    })
}
