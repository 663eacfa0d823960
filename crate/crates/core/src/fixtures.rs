//! Small categories with known concentration structures, used by tests, the
//! command line tool and the browser demo.

use std::sync::Arc;

use crate::category::{FinCategory, Functor, Morphism, MorphismId, ObjectId};
use crate::concentration::MorphismPartition;
use crate::monoid::FinMonoid;

/// Two objects `C`, `D` with `End(C) = ℤ/2`, `End(D) = ℤ/4` and no other
/// morphisms. Morphisms in order: `0_C 1_C 0_D 1_D 2_D 3_D`.
pub fn e1() -> FinCategory {
    cyclic_components(false)
}

/// [`e1`] plus a single morphism `u: C → D`.
pub fn e1m() -> FinCategory {
    cyclic_components(true)
}

fn cyclic_components(with_bridge: bool) -> FinCategory {
    let mut morphisms: Vec<Morphism> = (0..2)
        .map(|k| Morphism::new(format!("{k}_C"), ObjectId(0), ObjectId(0)))
        .chain((0..4).map(|k| Morphism::new(format!("{k}_D"), ObjectId(1), ObjectId(1))))
        .collect();
    if with_bridge {
        morphisms.push(Morphism::new("u", ObjectId(0), ObjectId(1)));
    }
    FinCategory::from_fn(
        vec!["C".into(), "D".into()],
        morphisms,
        vec![MorphismId(0), MorphismId(2)],
        |f, g| match (f.0, g.0) {
            (a @ 0..=1, b @ 0..=1) => MorphismId((a + b) % 2),
            (a @ 2..=5, b @ 2..=5) => MorphismId(2 + (a - 2 + b - 2) % 4),
            _ => MorphismId(6),
        },
    )
    .expect("fixture is well formed")
}

/// The four named concentration structures on [`e1`]:
///
/// - `a`: `{0_C,0_D} {1_C,2_D} {1_D} {3_D}`
/// - `b`: `{0_C,0_D,2_D} {1_C,1_D,3_D}`
/// - `c`: `{0_C,1_C,0_D}` and singletons
/// - `d`: `{0_C,0_D,1_D,2_D,3_D} {1_C}`
pub fn e1_partition(cat: &FinCategory, which: char) -> MorphismPartition {
    let classes: Vec<Vec<&str>> = match which {
        'a' => vec![vec!["0_C", "0_D"], vec!["1_C", "2_D"]],
        'b' => vec![vec!["0_C", "0_D", "2_D"], vec!["1_C", "1_D", "3_D"]],
        'c' => vec![vec!["0_C", "1_C", "0_D"]],
        'd' => vec![vec!["0_C", "0_D", "1_D", "2_D", "3_D"]],
        other => panic!("no partition named {other:?}"),
    };
    MorphismPartition::from_labels(cat, &classes).expect("labels exist in e1")
}

/// A category whose morphisms `x_ij: i → j` are colored by the elements of
/// `group`, composing by multiplying colors: `x_jk ∘ y_ij = (x·y)_ik`.
///
/// `arrows` lists the ordered pairs `(i, j)` of object indices carrying a full
/// set of colors; every other hom-set is empty except that each object gets
/// its identity, colored by the group identity.
pub fn group_colored(objects: &[&str], arrows: &[(usize, usize)], group: &FinMonoid, colors: &[&str]) -> FinCategory {
    assert_eq!(colors.len(), group.size());
    let mut keys: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..objects.len() {
        if !arrows.contains(&(i, i)) {
            keys.push((i, i, group.identity()));
        }
    }
    for &(i, j) in arrows {
        keys.extend((0..group.size()).map(|c| (i, j, c)));
    }
    keys.sort_unstable();
    let morphisms = keys
        .iter()
        .map(|&(i, j, c)| Morphism::new(format!("{}_{}{}", colors[c], objects[i], objects[j]), ObjectId(i), ObjectId(j)))
        .collect();
    let identities = (0..objects.len())
        .map(|i| MorphismId(keys.binary_search(&(i, i, group.identity())).expect("identity present")))
        .collect();
    FinCategory::from_fn(
        objects.iter().map(|s| s.to_string()).collect(),
        morphisms,
        identities,
        |f, g| {
            let (_, k, x) = keys[f.0];
            let (i, _, y) = keys[g.0];
            MorphismId(keys.binary_search(&(i, k, group.mul(x, y))).expect("arrow set closed under composition"))
        },
    )
    .expect("colored category is well formed")
}

/// Same-color partition of a [`group_colored`] category (the color is the
/// label prefix before `_`).
pub fn color_partition(cat: &FinCategory) -> MorphismPartition {
    let keys: Vec<&str> = cat
        .morphisms()
        .map(|m| cat.label(m).split('_').next().unwrap_or(""))
        .collect();
    MorphismPartition::from_class_of(&keys)
}

/// Objects `C`, `D`, every hom-set a copy of `ℤ/2 × ℤ/2` with colors
/// `d` (black, the identity color), `r`, `b`, `g`; 16 morphisms.
pub fn klein() -> FinCategory {
    group_colored(
        &["C", "D"],
        &[(0, 0), (0, 1), (1, 0), (1, 1)],
        &FinMonoid::klein(),
        &["d", "r", "b", "g"],
    )
}

pub fn klein_partition(cat: &FinCategory) -> MorphismPartition {
    color_partition(cat)
}

/// Objects `C < E < D`, three colors `d, r, b` (ℤ/3) on each arrow `i → j`
/// with `i < j`, identities only as loops; 12 morphisms.
pub fn z3_colored() -> FinCategory {
    group_colored(
        &["C", "E", "D"],
        &[(0, 1), (0, 2), (1, 2)],
        &FinMonoid::cyclic(3),
        &["d", "r", "b"],
    )
}

pub fn z3_colored_partition(cat: &FinCategory) -> MorphismPartition {
    color_partition(cat)
}

/// Objects `C, D, E` with `f: C → D`, `g: D → E`, `h = g∘f`.
pub fn triangle() -> FinCategory {
    let labels = ["id_C", "id_D", "id_E", "f", "g", "h"];
    let ends = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)];
    let morphisms = labels
        .iter()
        .zip(ends)
        .map(|(l, (s, t))| Morphism::new(*l, ObjectId(s), ObjectId(t)))
        .collect();
    FinCategory::from_fn(
        vec!["C".into(), "D".into(), "E".into()],
        morphisms,
        vec![MorphismId(0), MorphismId(1), MorphismId(2)],
        |f, g| match (f.0, g.0) {
            (0..=2, _) => g,
            (_, 0..=2) => f,
            (4, 3) => MorphismId(5),
            _ => unreachable!("no other composable pairs"),
        },
    )
    .expect("fixture is well formed")
}

/// The surjective functor onto the one-object category of `ℤ/2` sending
/// `f ↦ 0`, `g ↦ 1`, `h ↦ 1`.
pub fn triangle_functor() -> Functor {
    let source = Arc::new(triangle());
    let target = Arc::new(FinCategory::one_object(&FinMonoid::cyclic(2)));
    let mor = [0, 0, 0, 0, 1, 1].map(MorphismId).to_vec();
    Functor::new(source, target, vec![ObjectId(0); 3], mor).expect("fixture is well formed")
}

/// Named categories with a concentration structure on each.
pub fn catalog() -> Vec<(String, FinCategory, MorphismPartition)> {
    let mut out = Vec::new();
    let e1 = e1();
    for which in ['a', 'b', 'c', 'd'] {
        out.push((format!("e1/{which}"), e1.clone(), e1_partition(&e1, which)));
    }
    out.push(("e1/trivial".into(), e1.clone(), MorphismPartition::trivial(&e1)));
    let e1m = e1m();
    out.push(("e1m/trivial".into(), e1m.clone(), MorphismPartition::trivial(&e1m)));
    let k = klein();
    out.push(("klein/color".into(), k.clone(), klein_partition(&k)));
    let z = z3_colored();
    out.push(("z3color/color".into(), z.clone(), z3_colored_partition(&z)));
    let f2 = triangle();
    out.push(("triangle/trivial".into(), f2.clone(), MorphismPartition::trivial(&f2)));
    for (name, g) in [("Z4", FinMonoid::cyclic(4)), ("S3", FinMonoid::symmetric(3))] {
        let bg = FinCategory::one_object(&g);
        out.push((format!("B{name}/discrete"), bg.clone(), MorphismPartition::discrete(&bg)));
    }
    out
}
