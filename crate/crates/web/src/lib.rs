//! Browser demo: inspect the fixture structures, enumerate all concentration
//! structures on a small fixture category, and build torsor groupoid models.
//! Every entry point returns a JSON string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use concentra::concentration::{check_concentration, enumerate_concentrations, MorphismPartition, Verdict, ENUMERATION_BOUND};
use concentra::fixtures;
use concentra::groupoid::{sample_theta, theta_concentration, theta_isomorphism, torsor_groupoid};
use concentra::monoid::{concentration_monoid, find_isomorphism, FinMonoid};
use concentra::{FinCategory, ObjectId};

#[derive(Serialize)]
struct Table {
    elements: Vec<String>,
    rows: Vec<Vec<usize>>,
    is_group: bool,
    isomorphic_to: Vec<String>,
}

impl Table {
    fn of(m: &FinMonoid) -> Self {
        Table {
            elements: m.labels().to_vec(),
            rows: m.rows(),
            is_group: m.is_group(),
            isomorphic_to: identify(m),
        }
    }
}

#[derive(Serialize)]
struct Inspection {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<String>,
    classes: Vec<Vec<String>>,
    axioms: Vec<(String, String)>,
    is_concentration: bool,
    monoid: Option<Table>,
}

#[derive(Serialize)]
struct Enumeration {
    category: String,
    morphisms: usize,
    partitions: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct GroupoidModel {
    group: String,
    objects: usize,
    morphisms: usize,
    seed: u64,
    paths: Vec<String>,
    classes: usize,
    monoid: Table,
    isomorphic_to_group: bool,
}

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v),
        Err(error) => serde_json::to_string(&Failure { error }),
    }
    .expect("plain data serializes")
}

fn identify(m: &FinMonoid) -> Vec<String> {
    let n = m.size();
    let mut names = vec![format!("Z{n}")];
    match n {
        4 => names.push("V4".into()),
        6 => names.push("S3".into()),
        _ => {}
    }
    names
        .into_iter()
        .filter(|name| {
            FinMonoid::by_name(name)
                .and_then(|g| find_isomorphism(m, &g).ok().flatten())
                .is_some()
        })
        .collect()
}

fn classes(cat: &FinCategory, part: &MorphismPartition) -> Vec<Vec<String>> {
    part.classes()
        .iter()
        .map(|c| c.iter().map(|&m| cat.label(m).to_string()).collect())
        .collect()
}

fn lookup(name: &str) -> Result<(FinCategory, MorphismPartition), String> {
    fixtures::catalog()
        .into_iter()
        .find(|(n, _, _)| n == name)
        .map(|(_, c, p)| (c, p))
        .ok_or_else(|| format!("no fixture named {name:?}"))
}

fn verdict_labels(cat: &FinCategory, v: &Verdict) -> String {
    match v.witnesses().first() {
        None => v.to_string(),
        Some(w) => {
            let names: Vec<&str> = w.iter().map(|&m| cat.label(m)).collect();
            format!("{v}, e.g. ({})", names.join(", "))
        }
    }
}

/// Names accepted by [`inspect`] and [`enumerate`].
pub fn catalog_json() -> String {
    let names: Vec<String> = fixtures::catalog().into_iter().map(|(n, _, _)| n).collect();
    serde_json::to_string(&names).expect("names serialize")
}

pub fn inspect_json(name: &str, max_n: usize) -> String {
    to_json((|| {
        let (cat, part) = lookup(name)?;
        let report = check_concentration(&cat, &part, max_n.max(2)).map_err(|e| e.to_string())?;
        let mut axioms = vec![
            ("identity".to_string(), verdict_labels(&cat, &report.identity)),
            ("composition".to_string(), verdict_labels(&cat, &report.composition)),
        ];
        for (k, v) in &report.existence {
            axioms.push((format!("{k}-existence"), verdict_labels(&cat, v)));
        }
        axioms.push(("associativity".to_string(), verdict_labels(&cat, &report.associativity)));
        let monoid = if report.is_concentration() {
            Some(Table::of(&concentration_monoid(&cat, &part).map_err(|e| e.to_string())?.monoid))
        } else {
            None
        };
        Ok(Inspection {
            name: name.to_string(),
            objects: cat.object_labels().to_vec(),
            morphisms: cat.morphism_list().iter().map(|m| m.label.clone()).collect(),
            classes: classes(&cat, &part),
            axioms,
            is_concentration: report.is_concentration(),
            monoid,
        })
    })())
}

pub fn enumerate_json(name: &str) -> String {
    to_json((|| {
        let (cat, _) = lookup(name)?;
        let found = enumerate_concentrations(&cat, ENUMERATION_BOUND).map_err(|e| e.to_string())?;
        Ok(Enumeration {
            category: name.split('/').next().unwrap_or(name).to_string(),
            morphisms: cat.num_morphisms(),
            partitions: found.iter().map(|p| classes(&cat, p)).collect(),
        })
    })())
}

pub fn groupoid_model_json(group: &str, objects: usize, seed: u64) -> String {
    to_json((|| {
        let g = FinMonoid::by_name(group).ok_or_else(|| format!("no built-in group named {group:?}"))?;
        if !(1..=6).contains(&objects) {
            return Err("choose between 1 and 6 objects".to_string());
        }
        let gpd = torsor_groupoid(&g, objects).map_err(|e| e.to_string())?;
        let theta = sample_theta(&gpd, ObjectId(0), seed).map_err(|e| e.to_string())?;
        let part = theta_concentration(&gpd, &theta).map_err(|e| e.to_string())?;
        let hom = theta_isomorphism(&gpd, &theta).map_err(|e| e.to_string())?;
        let m = concentration_monoid(&gpd, &part).map_err(|e| e.to_string())?.monoid;
        let iso = find_isomorphism(&m, &g).map_err(|e| e.to_string())?.is_some();
        Ok(GroupoidModel {
            group: group.to_string(),
            objects,
            morphisms: gpd.num_morphisms(),
            seed,
            paths: theta.paths().iter().map(|&p| gpd.label(p).to_string()).collect(),
            classes: part.num_classes(),
            monoid: Table::of(&m),
            isomorphic_to_group: iso && hom.is_bijective(),
        })
    })())
}

#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_json()
}

#[wasm_bindgen]
pub fn inspect(name: &str, max_n: usize) -> String {
    inspect_json(name, max_n)
}

#[wasm_bindgen]
pub fn enumerate(name: &str) -> String {
    enumerate_json(name)
}

#[wasm_bindgen]
pub fn groupoid_model(group: &str, objects: usize, seed: u32) -> String {
    groupoid_model_json(group, objects, u64::from(seed))
}
