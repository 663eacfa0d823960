//! The workspace document: a JSON file of named categories, monoids,
//! partitions, functors, posets, group diagrams and actions, all referring to
//! each other by name.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use concentra::catalg::CatAction;
use concentra::category::{FinCategory, Functor, Morphism, MorphismId, ObjectId};
use concentra::concentration::MorphismPartition;
use concentra::dirlim::{DirectedPoset, GroupDiagram, PosetAction};
use concentra::monoid::FinMonoid;

pub const FORMAT_VERSION: u32 = 1;

/// A schema or reference error, located by a dotted field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadError {
    pub path: String,
    pub message: String,
}

impl LoadError {
    fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        LoadError {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for LoadError {}

type Load<T> = Result<T, LoadError>;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub format: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub monoids: BTreeMap<String, RawMonoid>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, RawCategory>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub partitions: BTreeMap<String, RawPartition>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, RawFunctor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub posets: BTreeMap<String, RawPoset>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagrams: BTreeMap<String, RawDiagram>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, RawAction>,
}

/// Either an explicit table or one of the built-in names (`Z4`, `V4`, `S3`, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMonoid {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    /// `table[a][b]` is the index of `a·b`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<Vec<usize>>,
}

/// Either explicit data or the one-object category of a monoid.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    /// `[id, src, tgt]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<(String, String, String)>,
    /// Object ↦ its identity morphism.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    /// `[f, g, f∘g]` for every composable pair.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub composition: Vec<(String, String, String)>,
}

/// Classes by morphism id; unlisted morphisms are singletons. `preset` is
/// `trivial` or `discrete` instead of `classes`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPartition {
    pub category: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

/// `leq` lists pairs `[a, b]` meaning `a ≤ b`; the reflexive-transitive
/// closure is taken.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPoset {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

/// Elements naming the same monoid carry literally the same group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDiagram {
    pub poset: String,
    pub groups: BTreeMap<String, String>,
    /// One entry per strict relation `from < to`.
    #[serde(default)]
    pub maps: Vec<RawMap>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMap {
    pub from: String,
    pub to: String,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RawAction {
    /// `perms[g]` lists the images of the poset elements, in element order,
    /// under group element `g`. Omitted: the trivial action.
    Poset {
        poset: String,
        group: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        perms: Vec<Vec<String>>,
    },
    /// Base morphism ↦ endofunctor of the fiber; omitted morphisms act as
    /// the identity functor.
    Category {
        base: String,
        fiber: String,
        #[serde(default)]
        functors: BTreeMap<String, String>,
    },
}

/// A loaded document with every cross-reference resolved.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub monoids: BTreeMap<String, Arc<FinMonoid>>,
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub partitions: BTreeMap<String, (String, MorphismPartition)>,
    pub functors: BTreeMap<String, Functor>,
    pub posets: BTreeMap<String, DirectedPoset>,
    pub diagrams: BTreeMap<String, (String, GroupDiagram)>,
    pub poset_actions: BTreeMap<String, (String, PosetAction)>,
    pub category_actions: BTreeMap<String, CatAction>,
}

pub fn parse(text: &str) -> Load<RawDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        LoadError::new(if path == "." { String::new() } else { path }, e.into_inner())
    })?;
    if raw.format != FORMAT_VERSION {
        return Err(LoadError::new(
            "format",
            format!("unsupported format {} (expected {FORMAT_VERSION})", raw.format),
        ));
    }
    Ok(raw)
}

pub fn read(path: &Path) -> Load<RawDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::new("", format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn load(path: &Path) -> Load<Document> {
    Document::from_raw(&read(path)?)
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, path: &str, kind: &str) -> Load<&'a T> {
    map.get(name).ok_or_else(|| LoadError::new(path, format!("unknown {kind} {name:?}")))
}

pub fn build_monoid(raw: &RawMonoid, path: &str) -> Load<FinMonoid> {
    match &raw.named {
        Some(name) => {
            if !raw.elements.is_empty() || !raw.table.is_empty() {
                return Err(LoadError::new(path, "give either `named` or `elements`/`table`"));
            }
            FinMonoid::by_name(name).ok_or_else(|| LoadError::new(format!("{path}.named"), format!("no built-in monoid {name:?}")))
        }
        None => FinMonoid::new(raw.elements.clone(), raw.table.clone()).map_err(|e| LoadError::new(format!("{path}.table"), e)),
    }
}

/// Builds a category without checking the category axioms.
pub fn build_category(raw: &RawCategory, path: &str, monoids: &BTreeMap<String, Arc<FinMonoid>>) -> Load<FinCategory> {
    if let Some(m) = &raw.monoid {
        if !raw.objects.is_empty() || !raw.morphisms.is_empty() || !raw.composition.is_empty() {
            return Err(LoadError::new(path, "give either `monoid` or explicit data"));
        }
        let m = lookup(monoids, m, &format!("{path}.monoid"), "monoid")?;
        return Ok(FinCategory::one_object(m));
    }
    let obj_index = index_of(&raw.objects, &format!("{path}.objects"), "object")?;
    let ids: Vec<String> = raw.morphisms.iter().map(|m| m.0.clone()).collect();
    let mor_index = index_of(&ids, &format!("{path}.morphisms"), "morphism")?;
    let obj = |name: &str, p: String| {
        obj_index
            .get(name)
            .map(|&i| ObjectId(i))
            .ok_or_else(|| LoadError::new(p, format!("unknown object {name:?}")))
    };
    let mor = |name: &str, p: String| {
        mor_index
            .get(name)
            .map(|&i| MorphismId(i))
            .ok_or_else(|| LoadError::new(p, format!("unknown morphism {name:?}")))
    };
    let morphisms = raw
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, (id, s, t))| {
            Ok(Morphism::new(
                id.clone(),
                obj(s, format!("{path}.morphisms[{i}][1]"))?,
                obj(t, format!("{path}.morphisms[{i}][2]"))?,
            ))
        })
        .collect::<Load<Vec<_>>>()?;
    for o in raw.identities.keys() {
        obj(o, format!("{path}.identities.{o}"))?;
    }
    let identities = raw
        .objects
        .iter()
        .map(|o| {
            let id = raw
                .identities
                .get(o)
                .ok_or_else(|| LoadError::new(format!("{path}.identities"), format!("no identity for {o:?}")))?;
            mor(id, format!("{path}.identities.{o}"))
        })
        .collect::<Load<Vec<_>>>()?;
    let triples = raw
        .composition
        .iter()
        .enumerate()
        .map(|(i, (f, g, fg))| {
            let p = |k: usize| format!("{path}.composition[{i}][{k}]");
            Ok((mor(f, p(0))?, mor(g, p(1))?, mor(fg, p(2))?))
        })
        .collect::<Load<Vec<_>>>()?;
    FinCategory::new(raw.objects.clone(), morphisms, identities, triples).map_err(|e| LoadError::new(path, e))
}

fn index_of(names: &[String], path: &str, kind: &str) -> Load<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
        if out.insert(n.clone(), i).is_some() {
            return Err(LoadError::new(format!("{path}[{i}]"), format!("duplicate {kind} {n:?}")));
        }
    }
    Ok(out)
}

impl Document {
    /// Resolves every reference. Categories must satisfy the category axioms.
    pub fn from_raw(raw: &RawDocument) -> Load<Document> {
        let mut doc = Document::default();
        for (name, m) in &raw.monoids {
            doc.monoids.insert(name.clone(), Arc::new(build_monoid(m, &format!("monoids.{name}"))?));
        }
        for (name, c) in &raw.categories {
            let path = format!("categories.{name}");
            let cat = build_category(c, &path, &doc.monoids)?;
            if let Some(v) = cat.validate().violations.first() {
                return Err(LoadError::new(path, format!("not a category: {v}")));
            }
            doc.categories.insert(name.clone(), Arc::new(cat));
        }
        for (name, p) in &raw.partitions {
            let path = format!("partitions.{name}");
            let cat = lookup(&doc.categories, &p.category, &format!("{path}.category"), "category")?;
            let part = match p.preset.as_deref() {
                Some(_) if !p.classes.is_empty() => return Err(LoadError::new(&path, "give either `preset` or `classes`")),
                Some("trivial") => MorphismPartition::trivial(cat),
                Some("discrete") => MorphismPartition::discrete(cat),
                Some(other) => return Err(LoadError::new(format!("{path}.preset"), format!("unknown preset {other:?}"))),
                None => {
                    let mut seen = BTreeSet::new();
                    for (i, class) in p.classes.iter().enumerate() {
                        for (j, m) in class.iter().enumerate() {
                            let here = format!("{path}.classes[{i}][{j}]");
                            if cat.morphism_by_label(m).is_none() {
                                return Err(LoadError::new(here, format!("unknown morphism {m:?}")));
                            }
                            if !seen.insert(m.clone()) {
                                return Err(LoadError::new(here, format!("{m:?} is listed twice")));
                            }
                        }
                    }
                    MorphismPartition::from_labels(cat, &p.classes).map_err(|e| LoadError::new(&path, e))?
                }
            };
            doc.partitions.insert(name.clone(), (p.category.clone(), part));
        }
        for (name, f) in &raw.functors {
            let path = format!("functors.{name}");
            doc.functors.insert(name.clone(), doc.build_functor(f, &path)?);
        }
        for (name, p) in &raw.posets {
            let path = format!("posets.{name}");
            let index = index_of(&p.elements, &format!("{path}.elements"), "element")?;
            let pairs = p
                .leq
                .iter()
                .enumerate()
                .map(|(i, (a, b))| {
                    let get = |x: &str, k: usize| {
                        index
                            .get(x)
                            .copied()
                            .ok_or_else(|| LoadError::new(format!("{path}.leq[{i}][{k}]"), format!("unknown element {x:?}")))
                    };
                    Ok((get(a, 0)?, get(b, 1)?))
                })
                .collect::<Load<Vec<_>>>()?;
            let poset = DirectedPoset::from_relations(p.elements.clone(), &pairs).map_err(|e| LoadError::new(&path, e))?;
            doc.posets.insert(name.clone(), poset);
        }
        for (name, d) in &raw.diagrams {
            let path = format!("diagrams.{name}");
            let poset = lookup(&doc.posets, &d.poset, &format!("{path}.poset"), "poset")?.clone();
            let names: Vec<String> = d.groups.values().cloned().collect::<BTreeSet<_>>().into_iter().collect();
            let registry = names
                .iter()
                .map(|m| lookup(&doc.monoids, m, &format!("{path}.groups"), "monoid").cloned())
                .collect::<Load<Vec<_>>>()?;
            for e in d.groups.keys() {
                if poset.index_of(e).is_none() {
                    return Err(LoadError::new(format!("{path}.groups.{e}"), "not an element of the poset"));
                }
            }
            let group_of = poset
                .labels()
                .iter()
                .map(|e| {
                    let m = d
                        .groups
                        .get(e)
                        .ok_or_else(|| LoadError::new(format!("{path}.groups"), format!("no group for {e:?}")))?;
                    Ok(names.binary_search(m).expect("collected above"))
                })
                .collect::<Load<Vec<_>>>()?;
            let maps = d
                .maps
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let get = |x: &str, field: &str| {
                        poset
                            .index_of(x)
                            .ok_or_else(|| LoadError::new(format!("{path}.maps[{i}].{field}"), format!("unknown element {x:?}")))
                    };
                    Ok(((get(&m.from, "from")?, get(&m.to, "to")?), m.map.clone()))
                })
                .collect::<Load<Vec<_>>>()?;
            let diagram = GroupDiagram::new(poset, registry, group_of, &maps).map_err(|e| LoadError::new(&path, e))?;
            doc.diagrams.insert(name.clone(), (d.poset.clone(), diagram));
        }
        for (name, a) in &raw.actions {
            let path = format!("actions.{name}");
            match a {
                RawAction::Poset { poset, group, perms } => {
                    let p = lookup(&doc.posets, poset, &format!("{path}.poset"), "poset")?;
                    let g = lookup(&doc.monoids, group, &format!("{path}.group"), "monoid")?.clone();
                    let action = if perms.is_empty() {
                        PosetAction::trivial(p, g)
                    } else {
                        let perms = perms
                            .iter()
                            .enumerate()
                            .map(|(i, row)| {
                                row.iter()
                                    .enumerate()
                                    .map(|(j, x)| {
                                        p.index_of(x).ok_or_else(|| {
                                            LoadError::new(format!("{path}.perms[{i}][{j}]"), format!("unknown element {x:?}"))
                                        })
                                    })
                                    .collect::<Load<Vec<_>>>()
                            })
                            .collect::<Load<Vec<_>>>()?;
                        PosetAction::new(p, g, perms).map_err(|e| LoadError::new(&path, e))?
                    };
                    doc.poset_actions.insert(name.clone(), (poset.clone(), action));
                }
                RawAction::Category { base, fiber, functors } => {
                    let b = lookup(&doc.categories, base, &format!("{path}.base"), "category")?.clone();
                    let f = lookup(&doc.categories, fiber, &format!("{path}.fiber"), "category")?.clone();
                    for m in functors.keys() {
                        if b.morphism_by_label(m).is_none() {
                            return Err(LoadError::new(format!("{path}.functors.{m}"), "not a morphism of the base"));
                        }
                    }
                    let list = b
                        .morphisms()
                        .map(|m| match functors.get(b.label(m)) {
                            None => Ok(Functor::identity(f.clone())),
                            Some(fname) => {
                                let here = format!("{path}.functors.{}", b.label(m));
                                let functor = lookup(&doc.functors, fname, &here, "functor")?;
                                if **functor.source() != *f || **functor.target() != *f {
                                    return Err(LoadError::new(here, format!("{fname:?} is not an endofunctor of {fiber:?}")));
                                }
                                Ok(Functor::new(f.clone(), f.clone(), functor.obj_map().to_vec(), functor.mor_map().to_vec())
                                    .expect("same category"))
                            }
                        })
                        .collect::<Load<Vec<_>>>()?;
                    let action = CatAction::new(b, f, list).map_err(|e| LoadError::new(&path, e))?;
                    doc.category_actions.insert(name.clone(), action);
                }
            }
        }
        Ok(doc)
    }

    fn build_functor(&self, f: &RawFunctor, path: &str) -> Load<Functor> {
        let s = lookup(&self.categories, &f.source, &format!("{path}.source"), "category")?;
        let t = lookup(&self.categories, &f.target, &format!("{path}.target"), "category")?;
        let obj_map = s
            .object_labels()
            .iter()
            .map(|o| {
                let here = format!("{path}.objects.{o}");
                let image = f.objects.get(o).ok_or_else(|| LoadError::new(format!("{path}.objects"), format!("no image for {o:?}")))?;
                t.object_by_label(image)
                    .ok_or_else(|| LoadError::new(here, format!("unknown object {image:?}")))
            })
            .collect::<Load<Vec<_>>>()?;
        let mor_map = s
            .morphism_list()
            .iter()
            .map(|m| {
                let here = format!("{path}.morphisms.{}", m.label);
                let image = f
                    .morphisms
                    .get(&m.label)
                    .ok_or_else(|| LoadError::new(format!("{path}.morphisms"), format!("no image for {:?}", m.label)))?;
                t.morphism_by_label(image)
                    .ok_or_else(|| LoadError::new(here, format!("unknown morphism {image:?}")))
            })
            .collect::<Load<Vec<_>>>()?;
        for (key, kind, known) in [
            (&f.objects, "objects", s.object_labels().to_vec()),
            (&f.morphisms, "morphisms", s.morphism_list().iter().map(|m| m.label.clone()).collect()),
        ] {
            if let Some(extra) = key.keys().find(|k| !known.contains(k)) {
                return Err(LoadError::new(format!("{path}.{kind}.{extra}"), "not in the source category"));
            }
        }
        Functor::new(s.clone(), t.clone(), obj_map, mor_map).map_err(|e| LoadError::new(path, e))
    }

    pub fn category(&self, name: &str) -> Load<&Arc<FinCategory>> {
        lookup(&self.categories, name, "", "category")
    }

    /// The category of a partition, and the partition.
    pub fn partition(&self, name: &str) -> Load<(String, &Arc<FinCategory>, &MorphismPartition)> {
        let (cat, part) = lookup(&self.partitions, name, "", "partition")?;
        Ok((cat.clone(), &self.categories[cat], part))
    }

    pub fn functor(&self, name: &str) -> Load<&Functor> {
        lookup(&self.functors, name, "", "functor")
    }

    /// The only category, when there is exactly one.
    pub fn sole_category(&self) -> Load<(&String, &Arc<FinCategory>)> {
        let mut it = self.categories.iter();
        match (it.next(), it.next()) {
            (Some(c), None) => Ok(c),
            (None, _) => Err(LoadError::new("categories", "the document has no categories")),
            _ => Err(LoadError::new("categories", "several categories; choose one with --category")),
        }
    }

    /// Name of the category stored under this pointer, if any.
    pub fn name_of(&self, cat: &Arc<FinCategory>) -> Option<&String> {
        self.categories.iter().find(|(_, c)| Arc::ptr_eq(c, cat) || ***c == **cat).map(|(n, _)| n)
    }
}

impl RawDocument {
    pub fn new() -> Self {
        RawDocument {
            format: FORMAT_VERSION,
            ..Default::default()
        }
    }

    pub fn add_monoid(&mut self, name: &str, m: &FinMonoid) {
        self.monoids.insert(
            name.into(),
            RawMonoid {
                named: None,
                elements: m.labels().to_vec(),
                table: m.rows(),
            },
        );
    }

    pub fn add_named_monoid(&mut self, name: &str, builtin: &str) {
        self.monoids.insert(
            name.into(),
            RawMonoid {
                named: Some(builtin.into()),
                elements: Vec::new(),
                table: Vec::new(),
            },
        );
    }

    pub fn add_category(&mut self, name: &str, cat: &FinCategory) {
        let label = |m: MorphismId| cat.label(m).to_string();
        let raw = RawCategory {
            monoid: None,
            objects: cat.object_labels().to_vec(),
            morphisms: cat
                .morphism_list()
                .iter()
                .map(|m| (m.label.clone(), cat.object_label(m.src).into(), cat.object_label(m.tgt).into()))
                .collect(),
            identities: cat
                .objects()
                .map(|o| (cat.object_label(o).to_string(), label(cat.identity(o))))
                .collect(),
            composition: cat
                .composition_triples()
                .into_iter()
                .map(|(f, g, fg)| (label(f), label(g), label(fg)))
                .collect(),
        };
        self.categories.insert(name.into(), raw);
    }

    pub fn add_monoid_category(&mut self, name: &str, monoid: &str) {
        self.categories.insert(
            name.into(),
            RawCategory {
                monoid: Some(monoid.into()),
                ..Default::default()
            },
        );
    }

    /// Stores the non-singleton classes.
    pub fn add_partition(&mut self, name: &str, category: &str, cat: &FinCategory, part: &MorphismPartition) {
        let classes = part
            .classes()
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.iter().map(|&m| cat.label(m).to_string()).collect())
            .collect();
        self.partitions.insert(
            name.into(),
            RawPartition {
                category: category.into(),
                preset: None,
                classes,
            },
        );
    }

    pub fn add_preset_partition(&mut self, name: &str, category: &str, preset: &str) {
        self.partitions.insert(
            name.into(),
            RawPartition {
                category: category.into(),
                preset: Some(preset.into()),
                classes: Vec::new(),
            },
        );
    }

    pub fn add_functor(&mut self, name: &str, source: &str, target: &str, f: &Functor) {
        let (s, t) = (f.source(), f.target());
        self.functors.insert(
            name.into(),
            RawFunctor {
                source: source.into(),
                target: target.into(),
                objects: s
                    .objects()
                    .map(|o| (s.object_label(o).to_string(), t.object_label(f.obj(o)).to_string()))
                    .collect(),
                morphisms: s
                    .morphisms()
                    .map(|m| (s.label(m).to_string(), t.label(f.mor(m)).to_string()))
                    .collect(),
            },
        );
    }

    pub fn add_poset(&mut self, name: &str, poset: &DirectedPoset) {
        let l = |a: usize| poset.label(a).to_string();
        self.posets.insert(
            name.into(),
            RawPoset {
                elements: poset.labels().to_vec(),
                leq: poset.relations().into_iter().filter(|(a, b)| a != b).map(|(a, b)| (l(a), l(b))).collect(),
            },
        );
    }

    /// `registry_names[i]` names the monoid of registry entry `i`; those
    /// monoids must be added separately.
    pub fn add_diagram(&mut self, name: &str, poset: &str, diagram: &GroupDiagram, registry_names: &[&str]) {
        let p = diagram.poset();
        let groups = (0..p.len())
            .map(|a| (p.label(a).to_string(), registry_names[diagram.group_index(a)].to_string()))
            .collect();
        let maps = p
            .relations()
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| RawMap {
                from: p.label(a).into(),
                to: p.label(b).into(),
                map: diagram.hom(a, b).expect("strict relation").map().to_vec(),
            })
            .collect();
        self.diagrams.insert(
            name.into(),
            RawDiagram {
                poset: poset.into(),
                groups,
                maps,
            },
        );
    }

    pub fn add_poset_action(&mut self, name: &str, poset: &str, p: &DirectedPoset, group: &str, action: &PosetAction) {
        let trivial = action.perms().iter().all(|row| row.iter().enumerate().all(|(i, &j)| i == j));
        let perms = if trivial {
            Vec::new()
        } else {
            action
                .perms()
                .iter()
                .map(|row| row.iter().map(|&a| p.label(a).to_string()).collect())
                .collect()
        };
        self.actions.insert(
            name.into(),
            RawAction::Poset {
                poset: poset.into(),
                group: group.into(),
                perms,
            },
        );
    }

    pub fn to_json(&self) -> String {
        let mut s = compact_pretty(&serde_json::to_value(self).expect("documents serialize"));
        s.push('\n');
        s
    }
}

/// Pretty JSON that keeps arrays of scalars on one line.
pub fn compact_pretty(v: &serde_json::Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn write_value(out: &mut String, v: &serde_json::Value, depth: usize) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items
                .iter()
                .map(|x| serde_json::to_string(x).expect("scalars serialize"))
                .collect();
            out.push_str(&format!("[{}]", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalars serialize")),
    }
}
