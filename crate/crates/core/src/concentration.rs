//! Equivalence relations on morphisms and the concentration axioms.

use std::collections::BTreeMap;
use std::fmt;

use crate::category::{FinCategory, Functor, MorphismId};
use crate::error::{Error, Result};

/// Largest category accepted by the witness-level associativity scan.
pub const EXHAUSTIVE_BOUND: usize = 8;

/// Default largest category accepted by [`enumerate_concentrations`].
pub const ENUMERATION_BOUND: usize = 10;

/// Cap on the number of witnesses recorded per axiom.
const WITNESS_CAP: usize = 64;

/// An equivalence relation on the morphisms of a category.
///
/// Always kept in canonical form: classes are numbered in order of their
/// smallest member, and each class lists its members in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphismPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<MorphismId>>,
}

impl MorphismPartition {
    /// Canonicalizes an arbitrary class assignment (any labels are fine).
    pub fn from_class_of<K: Ord + Clone>(keys: &[K]) -> Self {
        let mut relabel: BTreeMap<K, usize> = BTreeMap::new();
        let mut class_of = Vec::with_capacity(keys.len());
        let mut classes: Vec<Vec<MorphismId>> = Vec::new();
        for (m, key) in keys.iter().enumerate() {
            let next = relabel.len();
            let c = *relabel.entry(key.clone()).or_insert(next);
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(MorphismId(m));
            class_of.push(c);
        }
        MorphismPartition { class_of, classes }
    }

    /// Classes of `n` morphisms given as lists; they must be disjoint and cover `0..n`.
    pub fn from_classes(n: usize, classes: &[Vec<MorphismId>]) -> Result<Self> {
        let mut key = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::MalformedPartition(format!("class {c} is empty")));
            }
            for &m in class {
                if m.0 >= n {
                    return Err(Error::MorphismOutOfRange { index: m.0, len: n });
                }
                if key[m.0] != usize::MAX {
                    return Err(Error::MalformedPartition(format!("{m} appears in two classes")));
                }
                key[m.0] = c;
            }
        }
        if let Some(m) = key.iter().position(|&k| k == usize::MAX) {
            return Err(Error::MalformedPartition(format!("m{m} is in no class")));
        }
        Ok(Self::from_class_of(&key))
    }

    /// Classes given by morphism labels; unlisted morphisms become singletons.
    pub fn from_labels<S: AsRef<str>>(cat: &FinCategory, classes: &[Vec<S>]) -> Result<Self> {
        let mut listed = vec![false; cat.num_morphisms()];
        let mut resolved = Vec::with_capacity(classes.len());
        for class in classes {
            let mut ids = Vec::with_capacity(class.len());
            for label in class {
                let m = cat
                    .morphism_by_label(label.as_ref())
                    .ok_or_else(|| Error::MalformedPartition(format!("unknown morphism label {:?}", label.as_ref())))?;
                listed[m.0] = true;
                ids.push(m);
            }
            resolved.push(ids);
        }
        for (m, seen) in listed.into_iter().enumerate() {
            if !seen {
                resolved.push(vec![MorphismId(m)]);
            }
        }
        Self::from_classes(cat.num_morphisms(), &resolved)
    }

    /// Everything in one class.
    pub fn trivial(cat: &FinCategory) -> Self {
        Self::from_class_of(&vec![0; cat.num_morphisms()])
    }

    /// Every morphism in its own class.
    pub fn discrete(cat: &FinCategory) -> Self {
        Self::from_class_of(&(0..cat.num_morphisms()).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, m: MorphismId) -> usize {
        self.class_of[m.0]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class(&self, c: usize) -> &[MorphismId] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<MorphismId>] {
        &self.classes
    }

    pub fn same_class(&self, a: MorphismId, b: MorphismId) -> bool {
        self.class_of[a.0] == self.class_of[b.0]
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &MorphismPartition) -> bool {
        self.len() == coarser.len()
            && self
                .classes
                .iter()
                .all(|c| c.iter().all(|&m| coarser.same_class(m, c[0])))
    }

    /// `{a, b} {c} ...` using the category's morphism labels.
    pub fn describe(&self, cat: &FinCategory) -> String {
        self.classes
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|&m| cat.label(m)).collect::<Vec<_>>().join(", ")))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub(crate) fn check_against(&self, cat: &FinCategory) -> Result<()> {
        if self.len() != cat.num_morphisms() {
            return Err(Error::MalformedPartition(format!(
                "partition covers {} morphisms but the category has {}",
                self.len(),
                cat.num_morphisms()
            )));
        }
        Ok(())
    }
}

/// Result of deciding one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// Each witness is a tuple of morphisms exhibiting the failure.
    Fails(Vec<Vec<MorphismId>>),
    NotEvaluated,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn witnesses(&self) -> &[Vec<MorphismId>] {
        match self {
            Verdict::Fails(w) => w,
            _ => &[],
        }
    }

    fn from_witnesses(w: Vec<Vec<MorphismId>>) -> Self {
        if w.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Fails(w)
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("holds"),
            Verdict::Fails(w) => write!(f, "fails ({} witness{})", w.len(), if w.len() == 1 { "" } else { "es" }),
            Verdict::NotEvaluated => f.write_str("not evaluated"),
        }
    }
}

/// Per-axiom verdicts for a candidate concentration structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    /// All identities lie in one class. Witness: two identities in different classes.
    pub identity: Verdict,
    /// The class of `f∘g` depends only on the classes of `f` and `g`.
    /// Witness: `[f, g, f', g']` with `f ~ f'`, `g ~ g'`, `f∘g ≁ f'∘g'`.
    pub composition: Verdict,
    /// `(k, verdict)` for `k = 2..=max_n`. Witness: one representative per
    /// class of a tuple of classes with no composable chain.
    pub existence: Vec<(usize, Verdict)>,
    /// Associativity of the induced class multiplication; evaluated only when
    /// the identity, composition and 2-existence axioms hold.
    /// Witness: representatives `[a, b, c]` of three classes.
    pub associativity: Verdict,
    /// The witness-level scan of the associativity axiom, when requested.
    /// Witness: `[f, f', g, g', h, h', m, n]`.
    pub exhaustive_associativity: Option<Verdict>,
}

impl AxiomReport {
    pub fn existence(&self, k: usize) -> Option<&Verdict> {
        self.existence.iter().find(|(j, _)| *j == k).map(|(_, v)| v)
    }

    /// All four axioms hold.
    pub fn is_concentration(&self) -> bool {
        self.identity.holds()
            && self.composition.holds()
            && self.existence(2).is_some_and(Verdict::holds)
            && self.associativity.holds()
            && self.exhaustive_associativity.as_ref().is_none_or(Verdict::holds)
    }

    /// Identity, composition and `n`-existence hold.
    pub fn is_n_concentration(&self, n: usize) -> bool {
        self.identity.holds() && self.composition.holds() && self.existence(n).is_some_and(Verdict::holds)
    }

    /// Every evaluated verdict holds and nothing was skipped.
    pub fn all_hold(&self) -> bool {
        self.is_concentration() && self.existence.iter().all(|(_, v)| v.holds())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckOptions {
    /// Also run the witness-level associativity scan (at most
    /// [`EXHAUSTIVE_BOUND`] morphisms).
    pub exhaustive: bool,
}

/// Decides the concentration axioms, with `k`-existence for every `2 ≤ k ≤ max_n`.
pub fn check_concentration(cat: &FinCategory, part: &MorphismPartition, max_n: usize) -> Result<AxiomReport> {
    check_concentration_with(cat, part, max_n, CheckOptions::default())
}

pub fn check_concentration_with(
    cat: &FinCategory,
    part: &MorphismPartition,
    max_n: usize,
    options: CheckOptions,
) -> Result<AxiomReport> {
    part.check_against(cat)?;
    if max_n < 2 {
        return Err(Error::MalformedPartition(format!("max_n must be at least 2, got {max_n}")));
    }
    if options.exhaustive && cat.num_morphisms() > EXHAUSTIVE_BOUND {
        return Err(Error::TooLarge {
            what: "category for the witness-level associativity scan",
            size: cat.num_morphisms(),
            bound: EXHAUSTIVE_BOUND,
        });
    }
    let identity = Verdict::from_witnesses(identity_witnesses(cat, part));
    let products = ClassProducts::new(cat, part, false);
    let composition = Verdict::from_witnesses(products.conflicts.clone());
    let existence: Vec<(usize, Verdict)> = (2..=max_n)
        .map(|k| (k, Verdict::from_witnesses(existence_witnesses(cat, part, k, false))))
        .collect();
    let associativity = if identity.holds() && composition.holds() && existence[0].1.holds() {
        Verdict::from_witnesses(products.associativity_witnesses(part, false))
    } else {
        Verdict::NotEvaluated
    };
    let exhaustive_associativity = options
        .exhaustive
        .then(|| Verdict::from_witnesses(exhaustive_associativity(cat, part)));
    Ok(AxiomReport {
        identity,
        composition,
        existence,
        associativity,
        exhaustive_associativity,
    })
}

/// Early-exit decision of the four axioms.
pub fn is_concentration(cat: &FinCategory, part: &MorphismPartition) -> bool {
    if part.len() != cat.num_morphisms() || !identity_witnesses(cat, part).is_empty() {
        return false;
    }
    let products = ClassProducts::new(cat, part, true);
    products.conflicts.is_empty()
        && existence_witnesses(cat, part, 2, true).is_empty()
        && products.associativity_witnesses(part, true).is_empty()
}

/// Requires all four axioms, as a precondition of a construction.
pub fn require_concentration(cat: &FinCategory, part: &MorphismPartition) -> Result<()> {
    let report = check_concentration(cat, part, 2)?;
    if report.is_concentration() {
        return Ok(());
    }
    let which = [
        ("identity", &report.identity),
        ("composition", &report.composition),
        ("2-existence", &report.existence[0].1),
        ("associativity", &report.associativity),
    ]
    .into_iter()
    .filter(|(_, v)| !v.holds())
    .map(|(name, _)| name)
    .collect::<Vec<_>>()
    .join(", ");
    Err(Error::NotConcentration(format!("axioms not satisfied: {which}")))
}

fn identity_witnesses(cat: &FinCategory, part: &MorphismPartition) -> Vec<Vec<MorphismId>> {
    let ids = cat.identities();
    ids.iter()
        .skip(1)
        .filter(|&&i| !part.same_class(i, ids[0]))
        .take(WITNESS_CAP)
        .map(|&i| vec![ids[0], i])
        .collect()
}

/// The class-level partial product `[f][g]`, recorded from the first
/// composable pair seen for each pair of classes.
pub(crate) struct ClassProducts {
    n: usize,
    table: Vec<Option<(usize, MorphismId, MorphismId)>>,
    conflicts: Vec<Vec<MorphismId>>,
}

impl ClassProducts {
    pub(crate) fn new(cat: &FinCategory, part: &MorphismPartition, stop_early: bool) -> Self {
        let n = part.num_classes();
        let mut table = vec![None; n * n];
        let mut conflicts = Vec::new();
        for (f, g, fg) in cat.composable_pairs() {
            let slot = &mut table[part.class_of(f) * n + part.class_of(g)];
            match *slot {
                None => *slot = Some((part.class_of(fg), f, g)),
                Some((c, f0, g0)) if c != part.class_of(fg) => {
                    if conflicts.len() < WITNESS_CAP {
                        conflicts.push(vec![f0, g0, f, g]);
                    }
                    if stop_early {
                        break;
                    }
                }
                Some(_) => {}
            }
        }
        ClassProducts { n, table, conflicts }
    }

    pub(crate) fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.n + b].map(|(c, _, _)| c)
    }

    fn associativity_witnesses(&self, part: &MorphismPartition, stop_early: bool) -> Vec<Vec<MorphismId>> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.get(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = self.get(b, c) else { continue };
                    if self.get(ab, c) != self.get(a, bc) {
                        out.push([a, b, c].iter().map(|&k| part.class(k)[0]).collect());
                        if stop_early || out.len() >= WITNESS_CAP {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Tuples of `k` classes that admit no composable chain of representatives.
fn existence_witnesses(cat: &FinCategory, part: &MorphismPartition, k: usize, stop_early: bool) -> Vec<Vec<MorphismId>> {
    let nc = part.num_classes();
    let no = cat.num_objects();
    let mut out = Vec::new();
    // frontier[o]: some chain of the chosen prefix has source `o`
    let mut stack: Vec<usize> = Vec::with_capacity(k);
    #[allow(clippy::too_many_arguments)]
    fn go(
        cat: &FinCategory,
        part: &MorphismPartition,
        k: usize,
        nc: usize,
        no: usize,
        frontier: Option<&[bool]>,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<MorphismId>>,
        stop_early: bool,
    ) -> bool {
        if stack.len() == k {
            return false;
        }
        for c in 0..nc {
            let mut next = vec![false; no];
            let mut any = false;
            for &m in part.class(c) {
                if frontier.is_none_or(|fr| fr[cat.tgt(m).0]) {
                    next[cat.src(m).0] = true;
                    any = true;
                }
            }
            stack.push(c);
            if !any {
                // every completion of this prefix fails; report the one padded with class 0
                let mut w: Vec<MorphismId> = stack.iter().map(|&c| part.class(c)[0]).collect();
                w.resize(k, part.class(0)[0]);
                out.push(w);
                if stop_early || out.len() >= WITNESS_CAP {
                    stack.pop();
                    return true;
                }
            } else if go(cat, part, k, nc, no, Some(&next), stack, out, stop_early) {
                stack.pop();
                return true;
            }
            stack.pop();
        }
        false
    }
    go(cat, part, k, nc, no, None, &mut stack, &mut out, stop_early);
    out
}

/// Whether the given classes (in composition order `c₁ ∘ c₂ ∘ …`) admit a
/// composable chain of representatives.
pub fn classes_composable(cat: &FinCategory, part: &MorphismPartition, classes: &[usize]) -> bool {
    let mut frontier: Option<Vec<bool>> = None;
    for &c in classes {
        let mut next = vec![false; cat.num_objects()];
        let mut any = false;
        for &m in part.class(c) {
            if frontier.as_ref().is_none_or(|fr| fr[cat.tgt(m).0]) {
                next[cat.src(m).0] = true;
                any = true;
            }
        }
        if !any {
            return false;
        }
        frontier = Some(next);
    }
    true
}

/// Direct scan of the associativity axiom: whenever `f ~ f'`, `g ~ g'`,
/// `h ~ h'`, `m ~ f∘g`, `n ~ g'∘h'` and `f'∘n`, `m∘h` exist, they must be related.
///
/// `m` is constrained through its class only: `f∘g` need not exist itself,
/// and `m` ranges over the class of any composite of representatives of `[f]`
/// and `[g]` (likewise for `n`). Since `f`, `g`, `g'`, `h'` enter only through
/// their classes, scanning composable pairs covers every such constraint.
fn exhaustive_associativity(cat: &FinCategory, part: &MorphismPartition) -> Vec<Vec<MorphismId>> {
    let mut out = Vec::new();
    let pairs: Vec<_> = cat.composable_pairs().collect();
    for &(f, g, fg) in &pairs {
        for &(g2, h2, gh) in &pairs {
            if !part.same_class(g, g2) {
                continue;
            }
            let x = part.class(part.class_of(fg));
            let y = part.class(part.class_of(gh));
            let lhs: Vec<(MorphismId, MorphismId, MorphismId)> = part
                .class(part.class_of(f))
                .iter()
                .flat_map(|&f2| y.iter().filter_map(move |&n| cat.compose(f2, n).map(|c| (f2, n, c))))
                .collect();
            let rhs: Vec<(MorphismId, MorphismId, MorphismId)> = x
                .iter()
                .flat_map(|&m| {
                    part.class(part.class_of(h2))
                        .iter()
                        .filter_map(move |&h| cat.compose(m, h).map(|c| (m, h, c)))
                })
                .collect();
            for &(f2, n, l) in &lhs {
                if let Some(&(m, h, _)) = rhs.iter().find(|&&(_, _, r)| !part.same_class(l, r)) {
                    out.push(vec![f, f2, g, g2, h, h2, m, n]);
                    if out.len() >= WITNESS_CAP {
                        return out;
                    }
                    break;
                }
            }
        }
    }
    out
}

/// A decided property together with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<W> {
    Holds,
    Fails(W),
}

impl<W> Outcome<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Holds => None,
            Outcome::Fails(w) => Some(w),
        }
    }
}

/// Every pair `(a, b)` with `a ~ b` (where `a` is the smallest member of its
/// class) whose images are not related.
pub fn preservation_failures(
    functor: &Functor,
    source_part: &MorphismPartition,
    target_part: &MorphismPartition,
) -> Result<Vec<(MorphismId, MorphismId)>> {
    source_part.check_against(functor.source())?;
    target_part.check_against(functor.target())?;
    let mut out = Vec::new();
    for class in source_part.classes() {
        let first = class[0];
        for &m in &class[1..] {
            if !target_part.same_class(functor.mor(first), functor.mor(m)) {
                out.push((first, m));
            }
        }
    }
    Ok(out)
}

/// `f ~ f' ⇒ F(f) ~ F(f')`.
pub fn is_concentration_preserving(
    functor: &Functor,
    source_part: &MorphismPartition,
    target_part: &MorphismPartition,
) -> Result<Outcome<(MorphismId, MorphismId)>> {
    Ok(match preservation_failures(functor, source_part, target_part)?.first() {
        None => Outcome::Holds,
        Some(&w) => Outcome::Fails(w),
    })
}

/// Strongly invertible, and both directions preserve the concentrations.
pub fn is_concentration_isomorphism(
    functor: &Functor,
    source_part: &MorphismPartition,
    target_part: &MorphismPartition,
) -> Result<bool> {
    let forward = is_concentration_preserving(functor, source_part, target_part)?;
    let Some(inverse) = functor.strong_inverse() else {
        return Ok(false);
    };
    Ok(forward.holds() && is_concentration_preserving(&inverse, target_part, source_part)?.holds())
}

/// All set partitions of `0..n` as restricted growth strings, in
/// lexicographic order. Each string is already in canonical class numbering.
pub fn set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        current: vec![0; n],
        maxes: vec![0; n],
        done: false,
    }
}

pub struct SetPartitions {
    current: Vec<usize>,
    // maxes[i] = max(current[..i]) (0 for i = 0)
    maxes: Vec<usize>,
    done: bool,
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let n = self.current.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let limit = self.maxes[i] + 1;
            if self.current[i] < limit {
                self.current[i] += 1;
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.maxes[j] = self.maxes[j - 1].max(self.current[j - 1]);
                }
                break;
            }
        }
        Some(out)
    }
}

/// Every concentration structure on `cat`, in restricted-growth-string order.
pub fn enumerate_concentrations(cat: &FinCategory, bound: usize) -> Result<Vec<MorphismPartition>> {
    let n = cat.num_morphisms();
    if n > bound {
        return Err(Error::TooLarge {
            what: "category for partition enumeration",
            size: n,
            bound,
        });
    }
    Ok(set_partitions(n)
        .map(|rgs| MorphismPartition::from_class_of(&rgs))
        .filter(|p| is_concentration(cat, p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::monoid::FinMonoid;
    use std::sync::Arc;

    fn bell(n: usize) -> usize {
        // Bell triangle
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                next.push(next.last().unwrap() + x);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn set_partition_counts_match_bell_numbers() {
        for n in 0..=7 {
            assert_eq!(set_partitions(n).count(), bell(n), "n = {n}");
        }
        assert_eq!(bell(10), 115_975);
    }

    #[test]
    fn set_partitions_are_canonical_and_distinct() {
        let all: Vec<_> = set_partitions(5).collect();
        let unique: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        for p in all {
            assert_eq!(MorphismPartition::from_class_of(&p).class_map(), &p[..]);
        }
    }

    #[test]
    fn canonical_form_orders_classes_by_smallest_member() {
        let p = MorphismPartition::from_class_of(&['x', 'y', 'x', 'z']);
        assert_eq!(p.class_map(), &[0, 1, 0, 2]);
        assert_eq!(p.class(0), &[MorphismId(0), MorphismId(2)]);
    }

    #[test]
    fn from_classes_rejects_overlap_and_gaps() {
        assert!(MorphismPartition::from_classes(3, &[vec![MorphismId(0), MorphismId(1)], vec![MorphismId(1), MorphismId(2)]]).is_err());
        assert!(MorphismPartition::from_classes(3, &[vec![MorphismId(0), MorphismId(1)]]).is_err());
        assert!(MorphismPartition::from_classes(2, &[vec![MorphismId(0), MorphismId(5)]]).is_err());
    }

    #[test]
    fn trivial_on_e1_has_one_class() {
        let e1 = fixtures::e1();
        let t = MorphismPartition::trivial(&e1);
        assert_eq!(t.num_classes(), 1);
        assert_eq!(t.class(0).len(), 6);
    }

    #[test]
    fn discrete_on_one_object_category_is_a_concentration() {
        let z4 = FinCategory::one_object(&FinMonoid::cyclic(4));
        let d = MorphismPartition::discrete(&z4);
        assert_eq!(d.num_classes(), 4);
        assert!(check_concentration(&z4, &d, 3).unwrap().all_hold());
    }

    #[test]
    fn discrete_on_e1_fails_two_existence() {
        let e1 = fixtures::e1();
        let r = check_concentration(&e1, &MorphismPartition::discrete(&e1), 2).unwrap();
        assert!(r.identity.fails());
        let w = r.existence(2).unwrap().witnesses();
        let one_c = e1.morphism_by_label("1_C").unwrap();
        let one_d = e1.morphism_by_label("1_D").unwrap();
        assert!(w.contains(&vec![one_c, one_d]));
        assert_eq!(r.associativity, Verdict::NotEvaluated);
    }

    #[test]
    fn e1_sim_a_is_a_three_concentration() {
        let e1 = fixtures::e1();
        let r = check_concentration(&e1, &fixtures::e1_partition(&e1, 'a'), 3).unwrap();
        assert!(r.all_hold(), "{r:?}");
    }

    #[test]
    fn merging_only_the_generators_breaks_composition() {
        let e1 = fixtures::e1();
        let p = MorphismPartition::from_labels(&e1, &[vec!["1_C", "1_D"]]).unwrap();
        let r = check_concentration(&e1, &p, 2).unwrap();
        let w = r.composition.witnesses();
        assert!(!w.is_empty());
        let ids: Vec<_> = ["1_C", "1_D"].iter().map(|l| e1.morphism_by_label(l).unwrap()).collect();
        // 1_C ∘ 1_C = 0_C versus 1_D ∘ 1_D = 2_D
        assert!(w.iter().any(|t| t == &vec![ids[0], ids[0], ids[1], ids[1]]));
        assert_eq!(r.associativity, Verdict::NotEvaluated);
    }

    #[test]
    fn z3_colored_fails_three_existence_on_red() {
        let cat = fixtures::z3_colored();
        let p = fixtures::z3_colored_partition(&cat);
        let r = check_concentration(&cat, &p, 3).unwrap();
        assert!(r.is_concentration());
        let red = p.class_of(cat.morphism_by_label("r_CE").unwrap());
        assert!(!classes_composable(&cat, &p, &[red, red, red]));
        let w = r.existence(3).unwrap().witnesses();
        assert!(w.iter().any(|t| t.iter().all(|&m| p.class_of(m) == red)));
    }

    #[test]
    fn exhaustive_mode_refuses_large_categories() {
        let cat = fixtures::klein();
        let p = MorphismPartition::trivial(&cat);
        let err = check_concentration_with(&cat, &p, 2, CheckOptions { exhaustive: true }).unwrap_err();
        assert!(matches!(err, Error::TooLarge { bound: 8, .. }));
    }

    #[test]
    fn partition_size_mismatch_is_structural() {
        let e1 = fixtures::e1();
        let p = MorphismPartition::trivial(&fixtures::e1m());
        assert!(matches!(check_concentration(&e1, &p, 2), Err(Error::MalformedPartition(_))));
    }

    #[test]
    fn preservation_witness() {
        let e1 = Arc::new(fixtures::e1());
        let id = Functor::identity(e1.clone());
        let a = fixtures::e1_partition(&e1, 'a');
        assert!(is_concentration_preserving(&id, &a, &a).unwrap().holds());
        assert!(is_concentration_isomorphism(&id, &a, &a).unwrap());
        let fails = preservation_failures(&id, &a, &MorphismPartition::discrete(&e1)).unwrap();
        let pair = (e1.morphism_by_label("1_C").unwrap(), e1.morphism_by_label("2_D").unwrap());
        assert!(fails.contains(&pair));
    }

    #[test]
    fn triangle_functor_is_not_an_isomorphism() {
        let f = fixtures::triangle_functor();
        let s = MorphismPartition::trivial(f.source());
        let t = MorphismPartition::discrete(f.target());
        assert!(!is_concentration_isomorphism(&f, &s, &t).unwrap());
    }

    #[test]
    fn enumeration_on_bg_z2() {
        let cat = FinCategory::one_object(&FinMonoid::cyclic(2));
        let all = enumerate_concentrations(&cat, ENUMERATION_BOUND).unwrap();
        assert_eq!(all, vec![MorphismPartition::trivial(&cat), MorphismPartition::discrete(&cat)]);
    }

    #[test]
    fn enumeration_bound() {
        let cat = fixtures::klein();
        assert!(matches!(
            enumerate_concentrations(&cat, ENUMERATION_BOUND),
            Err(Error::TooLarge { size: 16, bound: 10, .. })
        ));
    }
}
