//! Catalogs of commutative A-loops, their persistence, and the enumeration
//! pipelines that fill them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cocycle::{classify_extensions, CocycleFlags};
use crate::construct::{build_terg, enumerate_gf_aloops, TergParams};
use crate::error::{Error, Result};
use crate::iso::{count_isotopy_classes, fingerprint, find_isomorphism, InvariantFingerprint, Profiled};
use crate::structure::{is_a_loop, multiplication_group, nucleus_sizes};
use crate::table::{abelian_groups_of_order, LoopTable};

/// How a catalog entry was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Provenance {
    Gf { group: String, g: Vec<usize>, t: usize },
    Extension { base: String, modulus: usize, coords: Vec<u8> },
    DirectProduct { left: String, right: String },
    Terg { n: usize, a: usize, b: usize },
    Imported,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordFlags {
    pub nonassociative: bool,
    pub exponent: Option<usize>,
    pub center_size: usize,
}

impl RecordFlags {
    pub fn of(l: &LoopTable) -> Self {
        RecordFlags {
            nonassociative: !l.is_associative(),
            exponent: l.exponent().ok(),
            center_size: nucleus_sizes(l)[3],
        }
    }
}

/// One isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub id: String,
    pub order: usize,
    pub table: Vec<Vec<u16>>,
    pub fingerprint: InvariantFingerprint,
    pub provenance: Provenance,
    pub flags: RecordFlags,
}

impl CatalogRecord {
    pub fn new(id: String, table: &LoopTable, provenance: Provenance) -> Self {
        CatalogRecord {
            id,
            order: table.order(),
            table: table.cells().chunks(table.order()).map(|r| r.to_vec()).collect(),
            fingerprint: fingerprint(table),
            provenance,
            flags: RecordFlags::of(table),
        }
    }

    pub fn loop_table(&self) -> Result<LoopTable> {
        let rows: Vec<Vec<usize>> = self.table.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect();
        LoopTable::from_rows(&rows)
    }

    /// Latin with neutral `0`, commutative and an A-loop.
    pub fn revalidate(&self) -> Result<()> {
        let cells: Vec<u16> = self.table.iter().flatten().copied().collect();
        let l = LoopTable::from_cells(self.order, cells)?;
        if !l.is_commutative() {
            return Err(Error::NotCommutative);
        }
        if !is_a_loop(&l) {
            return Err(Error::NotALoop);
        }
        Ok(())
    }
}

/// Records sorted by `(order, fingerprint, table)` with ids `order.k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    pub records: Vec<CatalogRecord>,
}

impl Catalog {
    /// Sorts the entries and assigns ids.
    pub fn from_entries(entries: Vec<(LoopTable, Provenance)>) -> Self {
        let mut records: Vec<CatalogRecord> =
            entries.into_par_iter().map(|(t, p)| CatalogRecord::new(String::new(), &t, p)).collect();
        records.sort_by(|a, b| (a.order, &a.fingerprint, &a.table).cmp(&(b.order, &b.fingerprint, &b.table)));
        let mut counter = std::collections::BTreeMap::new();
        for r in records.iter_mut() {
            let k = counter.entry(r.order).or_insert(0usize);
            *k += 1;
            r.id = format!("{}.{}", r.order, k);
        }
        Catalog { records }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn tables(&self) -> Vec<LoopTable> {
        self.records.iter().map(|r| r.loop_table().expect("catalog tables are loops")).collect()
    }

    pub fn to_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect()
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let records = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::ParseError(format!("line {}: {e}", i + 1))))
            .collect::<Result<Vec<CatalogRecord>>>()?;
        Ok(Catalog { records })
    }
}

/// A table as JSON, with its fingerprint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<InvariantFingerprint>,
}

pub fn table_to_json(l: &LoopTable) -> String {
    let doc = TableJson { order: l.order(), table: l.rows(), fingerprint: Some(fingerprint(l)) };
    serde_json::to_string_pretty(&doc).expect("tables serialize") + "\n"
}

pub fn table_from_json(text: &str) -> Result<LoopTable> {
    let doc: TableJson = serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    if doc.table.len() != doc.order {
        return Err(Error::ParseError(format!("declared order {} but {} rows", doc.order, doc.table.len())));
    }
    LoopTable::from_rows(&doc.table).map_err(|e| match e {
        Error::NotLatin(msg) => Error::ParseError(format!("not a Latin square: {msg}")),
        Error::NoNeutral => Error::ParseError("no neutral element".into()),
        other => other,
    })
}

/// Reads ALOOP text or JSON, deciding by the first non-blank character.
pub fn read_table(text: &str) -> Result<LoopTable> {
    if text.trim_start().starts_with('{') {
        table_from_json(text)
    } else {
        LoopTable::parse_aloop(text)
    }
}

pub fn group_label(moduli: &[usize]) -> String {
    moduli.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x")
}

/// What to keep from an enumeration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOptions {
    pub center_nontrivial: bool,
    pub exponent: Option<usize>,
}

/// Counts over a set of loops, with isotopy counts alongside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Count {
    pub isomorphism: usize,
    pub isotopy: usize,
}

impl Count {
    fn of(loops: &[LoopTable]) -> Self {
        Count { isomorphism: loops.len(), isotopy: count_isotopy_classes(loops) }
    }
}

/// Statistics of one cocycle classification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionStats {
    pub base: String,
    pub modulus: usize,
    pub dim_c: usize,
    pub dim_b: usize,
    pub dim_d: usize,
    pub orbits: usize,
    pub extensions: usize,
    pub new_classes: usize,
}

/// Counts in the sense of the enumeration table; `None` where the
/// pipelines for the order do not cover the category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub order: usize,
    pub groups: usize,
    pub nonassociative: Option<Count>,
    pub with_center: Option<Count>,
    pub prime_exponent: Option<Count>,
    pub prime_exponent_with_center: Option<Count>,
    pub extensions_before_isomorphism: usize,
    pub orbits_total: usize,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub catalog: Catalog,
    pub summary: EnumerationSummary,
    pub extension_stats: Vec<ExtensionStats>,
}

pub const SUPPORTED_ORDERS: [usize; 5] = [8, 16, 24, 27, 32];

fn smallest_prime(n: usize) -> usize {
    (2..=n).find(|d| n % d == 0).unwrap_or(n)
}

struct Collector {
    kept: Vec<Profiled>,
    provenance: Vec<Provenance>,
    stats: Vec<ExtensionStats>,
}

impl Collector {
    fn new() -> Self {
        Collector { kept: Vec::new(), provenance: Vec::new(), stats: Vec::new() }
    }

    fn offer(&mut self, table: LoopTable, provenance: Provenance) {
        if table.is_associative() {
            return;
        }
        let p = Profiled::new(table);
        if !self.kept.iter().any(|k| k.isomorphic_to(&p)) {
            self.kept.push(p);
            self.provenance.push(provenance);
        }
    }

    fn gf_over(&mut self, group_moduli: &[usize]) -> Result<()> {
        let g = LoopTable::abelian(group_moduli);
        for l in enumerate_gf_aloops(&g)? {
            self.offer(l.table, Provenance::Gf { group: group_label(group_moduli), g: l.g.images(), t: l.t });
        }
        Ok(())
    }

    fn extensions(&mut self, bases: &[(String, LoopTable)], p: usize, flags: CocycleFlags) -> Result<()> {
        let tables: Vec<LoopTable> = bases.iter().map(|(_, t)| t.clone()).collect();
        for ((label, _), report) in bases.iter().zip(classify_extensions(&tables, p, flags)?) {
            self.stats.push(ExtensionStats {
                base: label.clone(),
                modulus: p,
                dim_c: report.dim_c,
                dim_b: report.dim_b,
                dim_d: report.dim_d,
                orbits: report.orbit_count,
                extensions: report.extension_count,
                new_classes: 0,
            });
            let before = self.kept.len();
            for (t, coords) in report.classes.into_iter().zip(report.class_coords) {
                self.offer(t, Provenance::Extension { base: label.clone(), modulus: p, coords });
            }
            self.stats.last_mut().expect("just pushed").new_classes = self.kept.len() - before;
        }
        Ok(())
    }

    fn finish(self) -> (Catalog, Vec<ExtensionStats>) {
        let entries = self.kept.into_iter().map(|p| p.table).zip(self.provenance).collect();
        (Catalog::from_entries(entries), self.stats)
    }
}

fn groups(order: usize) -> Vec<(String, LoopTable)> {
    abelian_groups_of_order(order).iter().map(|m| (group_label(m), LoopTable::abelian(m))).collect()
}

fn catalog_bases(c: &Catalog, keep: impl Fn(&CatalogRecord) -> bool) -> Vec<(String, LoopTable)> {
    c.records.iter().filter(|r| keep(r)).map(|r| (r.id.clone(), r.loop_table().expect("catalog tables are loops"))).collect()
}

fn raw_enumeration(order: usize, opts: EnumerateOptions) -> Result<(Catalog, Vec<ExtensionStats>)> {
    let mut c = Collector::new();
    match order {
        8 => {
            for m in abelian_groups_of_order(4) {
                c.gf_over(&m)?;
            }
            c.extensions(&groups(4), 2, CocycleFlags::COMMUTATIVE)?;
        }
        16 => {
            let (eight, _) = raw_enumeration(8, EnumerateOptions::default())?;
            let mut bases = groups(8);
            bases.extend(catalog_bases(&eight, |_| true));
            c.extensions(&bases, 2, CocycleFlags::COMMUTATIVE)?;
            for m in abelian_groups_of_order(8) {
                c.gf_over(&m)?;
            }
        }
        24 => {
            let (eight, _) = raw_enumeration(8, EnumerateOptions::default())?;
            let z3 = LoopTable::cyclic(3);
            for (id, t) in catalog_bases(&eight, |_| true) {
                c.offer(z3.direct_product(&t), Provenance::DirectProduct { left: "Z3".into(), right: id });
            }
        }
        27 => {
            for a in 0..3 {
                for b in 0..3 {
                    c.offer(build_terg(TergParams::new(3, a, b)?)?, Provenance::Terg { n: 3, a, b });
                }
            }
            c.extensions(&groups(9), 3, CocycleFlags::COMMUTATIVE)?;
        }
        32 => {
            if opts.exponent != Some(2) || !opts.center_nontrivial {
                return Err(Error::UnsupportedOrder(32));
            }
            let (sixteen, _) = raw_enumeration(16, EnumerateOptions::default())?;
            let mut bases = catalog_bases(&sixteen, |r| r.flags.exponent == Some(2));
            bases.push((group_label(&[2, 2, 2, 2]), LoopTable::elementary_abelian(2, 4)));
            c.extensions(&bases, 2, CocycleFlags::EXPONENT_TWO)?;
        }
        _ => return Err(Error::UnsupportedOrder(order)),
    }
    Ok(c.finish())
}

/// Runs the pipelines for `order` and keeps the records passing `opts`.
///
/// Order 8 unions the doubling construction over the groups of order 4 with
/// central extensions of those groups. Order 16 extends the three groups and
/// four loops of order 8 and adds the doubling construction over the groups
/// of order 8. Order 24 multiplies the order-8 catalog by `Z3`. Order 27
/// unions the `Z_3³` family with extensions of the groups of order 9.
/// Order 32 is available only for exponent 2 with nontrivial center and
/// extends the exponent-2 loops of order 16 and `Z2⁴`.
pub fn enumerate(order: usize, opts: EnumerateOptions) -> Result<Enumeration> {
    if !SUPPORTED_ORDERS.contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    let (full, stats) = raw_enumeration(order, opts)?;
    let tables = full.tables();
    let p = smallest_prime(order);
    let pick = |f: &dyn Fn(&CatalogRecord) -> bool| -> Vec<LoopTable> {
        full.records.iter().zip(&tables).filter(|(r, _)| f(r)).map(|(_, t)| t.clone()).collect()
    };
    let prime_power = order.is_power_of_two() || order == 27;
    let exp_p = |r: &CatalogRecord| r.flags.exponent == Some(p);
    let complete = order != 32;
    let summary = EnumerationSummary {
        order,
        groups: abelian_groups_of_order(order).len(),
        nonassociative: (complete && order != 27).then(|| Count::of(&tables)),
        with_center: complete.then(|| Count::of(&pick(&|r| r.flags.center_size > 1))),
        prime_exponent: (complete && prime_power && order != 27).then(|| Count::of(&pick(&exp_p))),
        prime_exponent_with_center: prime_power.then(|| Count::of(&pick(&|r| exp_p(r) && r.flags.center_size > 1))),
        extensions_before_isomorphism: stats.iter().map(|s| s.extensions).sum(),
        orbits_total: stats.iter().map(|s| s.orbits).sum(),
    };
    let records: Vec<CatalogRecord> = full
        .records
        .into_iter()
        .filter(|r| !opts.center_nontrivial || r.flags.center_size > 1)
        .filter(|r| opts.exponent.is_none_or(|e| r.flags.exponent == Some(e)))
        .collect();
    Ok(Enumeration { catalog: Catalog { records }, summary, extension_stats: stats })
}

/// One isomorphism class of the `Z_p³` family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P3Class {
    pub members: Vec<(usize, usize)>,
    pub mlt_order: u128,
    pub order_histogram: Vec<(usize, usize)>,
    /// `(member, map)`: an isomorphism from the first member, checked
    /// cell by cell.
    pub certificates: Vec<((usize, usize), Vec<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P3Report {
    pub p: usize,
    pub classes: Vec<P3Class>,
    /// The partition `{(0,0)}`, `{(0,b)}`, residues, non-residues.
    pub residue_pattern: Vec<Vec<(usize, usize)>>,
    pub matches_residue_pattern: bool,
}

fn is_square_mod(a: usize, p: usize) -> bool {
    (1..p).any(|x| x * x % p == a % p)
}

/// The partition predicted for primes other than 3: `(0,0)` alone, all
/// `(0,b)` with `b ≠ 0`, all `(a,b)` with `a` a nonzero square, all `(a,b)`
/// with `a` a non-square. Empty parts are omitted.
pub fn residue_pattern(p: usize) -> Vec<Vec<(usize, usize)>> {
    let all: Vec<(usize, usize)> = (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect();
    let parts: [Box<dyn Fn(&(usize, usize)) -> bool>; 4] = [
        Box::new(|&(a, b)| a == 0 && b == 0),
        Box::new(|&(a, b)| a == 0 && b != 0),
        Box::new(move |&(a, _)| a != 0 && is_square_mod(a, p)),
        Box::new(move |&(a, _)| a != 0 && !is_square_mod(a, p)),
    ];
    parts
        .iter()
        .map(|f| all.iter().copied().filter(|x| f(x)).collect::<Vec<_>>())
        .filter(|v| !v.is_empty())
        .collect()
}

/// Partitions the `p²` loops of the `Z_p³` family into isomorphism classes.
pub fn classify_p3(p: usize) -> Result<P3Report> {
    if ![2, 3, 5, 7].contains(&p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let params: Vec<(usize, usize)> = (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect();
    let built: Vec<(LoopTable, InvariantFingerprint)> = params
        .par_iter()
        .map(|&(a, b)| {
            let t = build_terg(TergParams::new(p, a, b)?)?;
            let f = fingerprint(&t);
            Ok((t, f))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut reps: Vec<usize> = Vec::new();
    let mut classes: Vec<P3Class> = Vec::new();
    for (i, (t, f)) in built.iter().enumerate() {
        let hit = reps.iter().enumerate().find_map(|(k, &r)| {
            if built[r].1 != *f {
                return None;
            }
            find_isomorphism(&built[r].0, t).map(|m| (k, m))
        });
        match hit {
            Some((k, m)) => {
                classes[k].members.push(params[i]);
                classes[k].certificates.push((params[i], m.images()));
            }
            None => {
                reps.push(i);
                classes.push(P3Class {
                    members: vec![params[i]],
                    mlt_order: multiplication_group(t).order(),
                    order_histogram: f.element_orders.clone(),
                    certificates: Vec::new(),
                });
            }
        }
    }
    let pattern = residue_pattern(p);
    let mut got: Vec<Vec<(usize, usize)>> = classes.iter().map(|c| c.members.clone()).collect();
    got.sort();
    let mut want = pattern.clone();
    want.sort();
    Ok(P3Report { p, classes, matches_residue_pattern: got == want, residue_pattern: pattern })
}
