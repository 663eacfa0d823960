#![allow(dead_code)]

use std::sync::Arc;

use concentra::category::{FinCategory, Functor, MorphismId, ObjectId};
use concentra::concentration::MorphismPartition;
use concentra::dirlim::{direct_category, DirectedPoset};
use concentra::fixtures;
use concentra::groupoid::{codiscrete, torsor_groupoid};
use concentra::monoid::FinMonoid;

/// Composable pairs `(f, g, f∘g)` read straight off the category, without
/// going through any cached product.
pub fn pairs(cat: &FinCategory) -> Vec<(usize, usize, usize)> {
    let n = cat.num_morphisms();
    let mut out = Vec::new();
    for f in 0..n {
        for g in 0..n {
            if cat.src(MorphismId(f)) == cat.tgt(MorphismId(g)) {
                out.push((f, g, cat.compose(MorphismId(f), MorphismId(g)).unwrap().0));
            }
        }
    }
    out
}

/// The class product table if identity, composition and 2-existence hold.
pub fn brute_products(cat: &FinCategory, cls: &[usize]) -> Option<Vec<Vec<usize>>> {
    let k = cls.iter().max().map_or(0, |m| m + 1);
    let ids = cat.identities();
    if ids.iter().any(|i| cls[i.0] != cls[ids[0].0]) {
        return None;
    }
    let mut table = vec![vec![usize::MAX; k]; k];
    for (f, g, fg) in pairs(cat) {
        let slot = &mut table[cls[f]][cls[g]];
        if *slot == usize::MAX {
            *slot = cls[fg];
        } else if *slot != cls[fg] {
            return None;
        }
    }
    if table.iter().flatten().any(|&x| x == usize::MAX) {
        return None;
    }
    Some(table)
}

pub fn brute_is_concentration(cat: &FinCategory, cls: &[usize]) -> bool {
    let Some(t) = brute_products(cat, cls) else {
        return false;
    };
    let k = t.len();
    (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

/// Every tuple of `n` classes has a composable chain of representatives.
pub fn brute_n_existence(cat: &FinCategory, cls: &[usize], n: usize) -> bool {
    let k = cls.iter().max().map_or(0, |m| m + 1);
    let m = cat.num_morphisms();
    let mut realised = std::collections::HashSet::new();
    fn go(
        cat: &FinCategory,
        cls: &[usize],
        n: usize,
        chain: &mut Vec<usize>,
        realised: &mut std::collections::HashSet<Vec<usize>>,
        m: usize,
    ) {
        if chain.len() == n {
            realised.insert(chain.iter().map(|&x| cls[x]).collect());
            return;
        }
        for f in 0..m {
            if let Some(&last) = chain.last() {
                if cat.src(MorphismId(last)) != cat.tgt(MorphismId(f)) {
                    continue;
                }
            }
            chain.push(f);
            go(cat, cls, n, chain, realised, m);
            chain.pop();
        }
    }
    go(cat, cls, n, &mut Vec::new(), &mut realised, m);
    realised.len() == k.pow(n as u32)
}

/// Isomorphism by trying every bijection; only for small monoids.
pub fn brute_isomorphic(a: &FinMonoid, b: &FinMonoid) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let n = a.size();
    assert!(n <= 8, "brute force isomorphism is for tiny monoids");
    let mut perm: Vec<usize> = (0..n).collect();
    permutohedron(&mut perm, 0, &mut |p| {
        (0..n).all(|x| (0..n).all(|y| p[a.mul(x, y)] == b.mul(p[x], p[y])))
    })
}

fn permutohedron(p: &mut Vec<usize>, i: usize, check: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if i == p.len() {
        return check(p);
    }
    for j in i..p.len() {
        p.swap(i, j);
        if permutohedron(p, i + 1, check) {
            p.swap(i, j);
            return true;
        }
        p.swap(i, j);
    }
    false
}

/// The monoid generated by some self-maps of `0..k`, under composition
/// (`x·y` applies `y` first).
pub fn transformation_monoid(k: usize, generators: &[Vec<usize>]) -> FinMonoid {
    let id: Vec<usize> = (0..k).collect();
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in generators {
            let next: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
            if !elems.contains(&next) {
                elems.push(next);
            }
        }
        i += 1;
    }
    let labels = elems.iter().map(|e| e.iter().map(|d| d.to_string()).collect::<String>()).collect();
    let table = elems
        .iter()
        .map(|x| {
            elems
                .iter()
                .map(|y| {
                    let xy: Vec<usize> = y.iter().map(|&v| x[v]).collect();
                    elems.iter().position(|e| *e == xy).unwrap()
                })
                .collect()
        })
        .collect();
    FinMonoid::new(labels, table).unwrap()
}

/// Named small categories from every corner of the crate.
pub fn small_categories() -> Vec<(String, FinCategory)> {
    let mut out: Vec<(String, FinCategory)> = Vec::new();
    out.push(("e1".into(), fixtures::e1()));
    out.push(("e1m".into(), fixtures::e1m()));
    out.push(("triangle".into(), fixtures::triangle()));
    for n in 1..=6 {
        out.push((format!("BZ{n}"), FinCategory::one_object(&FinMonoid::cyclic(n))));
    }
    out.push(("BS3".into(), FinCategory::one_object(&FinMonoid::symmetric(3))));
    out.push(("BV4".into(), FinCategory::one_object(&FinMonoid::klein())));
    out.push(("codiscrete2".into(), codiscrete(2)));
    out.push(("torsorZ2x1".into(), torsor_groupoid(&FinMonoid::cyclic(1), 2).unwrap()));
    let chain = DirectedPoset::chain(&["a", "b", "c"]).unwrap();
    out.push(("chain3".into(), direct_category(&chain)));
    let v = DirectedPoset::from_relations(vec!["A".into(), "B".into(), "T".into()], &[(0, 2), (1, 2)]).unwrap();
    out.push(("vee".into(), direct_category(&v)));
    out.push((
        "consts2".into(),
        FinCategory::one_object(&transformation_monoid(2, &[vec![0, 0], vec![1, 1]])),
    ));
    out.push((
        "full2".into(),
        FinCategory::one_object(&transformation_monoid(2, &[vec![0, 0], vec![1, 0]])),
    ));
    out
}

/// Every functor between two small categories.
pub fn all_functors(s: &Arc<FinCategory>, t: &Arc<FinCategory>) -> Vec<Functor> {
    let mut out = Vec::new();
    let so = s.num_objects();
    let to = t.num_objects();
    let mut obj = vec![0usize; so];
    loop {
        let mut mor = vec![0usize; s.num_morphisms()];
        mor_maps(s, t, &obj, 0, &mut mor, &mut out);
        let mut i = 0;
        loop {
            if i == so {
                return out;
            }
            obj[i] += 1;
            if obj[i] < to {
                break;
            }
            obj[i] = 0;
            i += 1;
        }
    }
}

fn mor_maps(
    s: &Arc<FinCategory>,
    t: &Arc<FinCategory>,
    obj: &[usize],
    i: usize,
    mor: &mut Vec<usize>,
    out: &mut Vec<Functor>,
) {
    if i == mor.len() {
        let f = Functor::new(
            s.clone(),
            t.clone(),
            obj.iter().map(|&o| ObjectId(o)).collect(),
            mor.iter().map(|&m| MorphismId(m)).collect(),
        )
        .unwrap();
        if f.check().ok() {
            out.push(f);
        }
        return;
    }
    let m = MorphismId(i);
    let (a, b) = (ObjectId(obj[s.src(m).0]), ObjectId(obj[s.tgt(m).0]));
    for h in t.hom(a, b) {
        mor[i] = h.0;
        mor_maps(s, t, obj, i + 1, mor, out);
    }
}

/// A random category whose morphisms `i → j` are colored by a group: the
/// strict arrows form a transitively closed relation and some objects get a
/// full group of loops.
pub fn colored_category(group: &FinMonoid, objects: usize, strict: &[(usize, usize)], loops: &[usize]) -> FinCategory {
    let mut rel = vec![vec![false; objects]; objects];
    for &(i, j) in strict {
        if i < j && j < objects {
            rel[i][j] = true;
        }
    }
    for k in 0..objects {
        for i in 0..objects {
            for j in 0..objects {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let mut arrows = Vec::new();
    for (i, row) in rel.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r || (i == j && loops.contains(&i)) {
                arrows.push((i, j));
            }
        }
    }
    let names: Vec<String> = (0..objects).map(|i| format!("X{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let colors: Vec<String> = (0..group.size()).map(|c| format!("c{c}")).collect();
    let colors: Vec<&str> = colors.iter().map(String::as_str).collect();
    fixtures::group_colored(&names, &arrows, group, &colors)
}

/// Fixture categories with their named concentration.
pub fn catalog() -> Vec<(String, Arc<FinCategory>, MorphismPartition)> {
    fixtures::catalog().into_iter().map(|(n, c, p)| (n, Arc::new(c), p)).collect()
}

pub fn morphism(cat: &FinCategory, label: &str) -> MorphismId {
    cat.morphism_by_label(label).unwrap_or_else(|| panic!("no morphism {label}"))
}
