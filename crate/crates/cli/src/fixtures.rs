//! The documents shipped in `fixtures/`, generated from the library fixtures.

use std::collections::BTreeMap;
use std::sync::Arc;

use concentra::category::{FinCategory, Functor, MorphismId, ObjectId};
use concentra::dirlim::{chain_fixture, swap_fixture};
use concentra::fixtures;
use concentra::monoid::FinMonoid;

use crate::doc::{RawAction, RawDocument};

/// File name and contents of every shipped document.
pub fn documents() -> Vec<(&'static str, RawDocument)> {
    vec![
        ("e1.doc", e1()),
        ("e1m.doc", e1m()),
        ("klein.doc", klein()),
        ("z3color.doc", z3color()),
        ("triangle.doc", triangle()),
        ("dirlim-chain.doc", dirlim_chain()),
        ("dirlim-swap.doc", dirlim_swap()),
        ("semidirect-s3.doc", semidirect_s3()),
        ("groups.doc", groups()),
    ]
}

fn e1() -> RawDocument {
    let mut d = RawDocument::new();
    let cat = fixtures::e1();
    d.add_category("E1", &cat);
    for which in ['a', 'b', 'c', 'd'] {
        d.add_partition(&format!("sim_{which}"), "E1", &cat, &fixtures::e1_partition(&cat, which));
    }
    d.add_preset_partition("trivial", "E1", "trivial");
    d.add_preset_partition("discrete", "E1", "discrete");
    d.add_named_monoid("Z2", "Z2");
    d.add_monoid_category("BZ2", "Z2");
    d.add_preset_partition("discrete_Z2", "BZ2", "discrete");
    let bz2 = Arc::new(FinCategory::one_object(&FinMonoid::cyclic(2)));
    let parity = (0..cat.num_morphisms()).map(|m| MorphismId(if m < 2 { m } else { (m - 2) % 2 })).collect();
    let f = Functor::new(Arc::new(cat), bz2, vec![ObjectId(0); 2], parity).expect("parity map");
    d.add_functor("parity", "E1", "BZ2", &f);
    d
}

fn e1m() -> RawDocument {
    let mut d = RawDocument::new();
    d.add_category("E1m", &fixtures::e1m());
    d.add_preset_partition("trivial", "E1m", "trivial");
    d
}

fn klein() -> RawDocument {
    let mut d = RawDocument::new();
    let cat = fixtures::klein();
    d.add_category("Klein", &cat);
    d.add_partition("color", "Klein", &cat, &fixtures::klein_partition(&cat));
    d.add_preset_partition("trivial", "Klein", "trivial");
    d
}

fn z3color() -> RawDocument {
    let mut d = RawDocument::new();
    let cat = fixtures::z3_colored();
    d.add_category("Z3color", &cat);
    d.add_partition("color", "Z3color", &cat, &fixtures::z3_colored_partition(&cat));
    d
}

fn triangle() -> RawDocument {
    let mut d = RawDocument::new();
    let f = fixtures::triangle_functor();
    d.add_named_monoid("Z2", "Z2");
    d.add_category("C", f.source());
    d.add_monoid_category("BZ2", "Z2");
    d.add_functor("F", "C", "BZ2", &f);
    d.add_preset_partition("discrete", "BZ2", "discrete");
    d.add_preset_partition("trivial", "BZ2", "trivial");
    d.add_preset_partition("trivial_C", "C", "trivial");
    d
}

fn dirlim_chain() -> RawDocument {
    let (diagram, action) = chain_fixture();
    let mut d = RawDocument::new();
    d.add_named_monoid("Z2", "Z2");
    d.add_named_monoid("Z4", "Z4");
    d.add_named_monoid("trivial", "Z1");
    d.add_poset("chain", diagram.poset());
    d.add_diagram("doubling", "chain", &diagram, &["Z2", "Z4"]);
    d.add_poset_action("trivial", "chain", diagram.poset(), "trivial", &action);
    d
}

fn dirlim_swap() -> RawDocument {
    let (diagram, action) = swap_fixture();
    let mut d = RawDocument::new();
    d.add_named_monoid("Z2", "Z2");
    d.add_poset("vee", diagram.poset());
    d.add_diagram("constant", "vee", &diagram, &["Z2"]);
    d.add_poset_action("swap", "vee", diagram.poset(), "Z2", &action);
    d
}

/// `ℤ/2` acting on `ℤ/3` by inversion.
fn semidirect_s3() -> RawDocument {
    let mut d = RawDocument::new();
    d.add_named_monoid("Z2", "Z2");
    d.add_named_monoid("Z3", "Z3");
    d.add_named_monoid("S3", "S3");
    d.add_monoid_category("BZ2", "Z2");
    d.add_monoid_category("BZ3", "Z3");
    let bz3 = Arc::new(FinCategory::one_object(&FinMonoid::cyclic(3)));
    let invert = Functor::new(bz3.clone(), bz3.clone(), vec![ObjectId(0)], [0, 2, 1].map(MorphismId).to_vec())
        .expect("inversion is a functor");
    d.add_functor("invert", "BZ3", "BZ3", &invert);
    d.actions.insert(
        "inversion".into(),
        RawAction::Category {
            base: "BZ2".into(),
            fiber: "BZ3".into(),
            functors: BTreeMap::from([("1".to_string(), "invert".to_string())]),
        },
    );
    d.add_preset_partition("discrete_Z3", "BZ3", "discrete");
    d.add_preset_partition("discrete_Z2", "BZ2", "discrete");
    d.add_preset_partition("trivial_Z3", "BZ3", "trivial");
    d
}

/// Group tables for the groupoid model commands.
fn groups() -> RawDocument {
    let mut d = RawDocument::new();
    for name in ["Z2", "Z3", "Z4", "Z6", "V4", "S3"] {
        d.add_monoid(name, &FinMonoid::by_name(name).expect("built-in group"));
    }
    d
}
