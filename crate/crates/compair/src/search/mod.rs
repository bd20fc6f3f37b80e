//! Exhaustive and meet-in-the-middle search engines plus classifiers.
//!
//! Every search enumerates ordered pairs. The meet-in-the-middle engines key
//! an index on the dense coefficient vector of the F-side product (F^2, or
//! F times its reflected copy), then look up `rhs - G-side product` for each
//! candidate g; every candidate pair is re-verified with the exact predicate
//! before it enters a report. Result lists are sorted by (f-table, g-table)
//! as integers, so reports are byte-identical across worker and shard
//! counts.

pub mod checkpoint;

use std::collections::HashMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::arrays::{
    is_mixed_pair, is_type2_array_pair, ArrayPair, PairKind,
};
use crate::boolfun::BooleanFunction;
use crate::construct::{
    standard_mixed_array_pair, standard_type2_array_pair, MixedParams, Type2Params,
};
use crate::error::{Error, Result};
use crate::project::{unproject_array, unproject_mixed, Permutation};
use crate::records::{
    ArrayPairRecord, ClassificationRecord, ParamsRecord, RecordKind, WitnessRecord,
};
use crate::sequences::{is_type2_seq_pair, is_type3_seq_pair, Sequence};

use checkpoint::CheckpointRecord;

/// Largest supported sizes; anything beyond is refused even with `force`.
pub const MAX_TYPE2_ARRAY_M: usize = 5;
pub const MAX_MIXED_ARRAY_M: usize = 4;
pub const MAX_SEQUENCE_LEN: usize = 32;

/// Knobs shared by all search engines.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Largest m accepted by [`search_type2_array_pairs`] without `force`.
    pub cutoff_type2_m: usize,
    /// Largest m accepted by [`search_mixed_array_pairs`] without `force`.
    pub cutoff_mixed_m: usize,
    /// Largest L accepted by the sequence searches without `force`.
    pub cutoff_len: usize,
    /// Allow sizes above the cutoffs (up to the hard maxima).
    pub force: bool,
    /// Worker threads for the lookup phase.
    pub workers: usize,
    /// Number of f-table shards (a power of two); the key index holds one
    /// shard at a time.
    pub shards: usize,
    /// Checkpoint file for resumable sharded runs.
    pub checkpoint: Option<PathBuf>,
    /// Process at most this many pending shards, then stop with a
    /// `ResourceLimit` error; a later call with the same checkpoint resumes.
    pub max_shards_per_session: Option<usize>,
    /// Attach every projection witness instead of just the first.
    pub all_witnesses: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            cutoff_type2_m: 4,
            cutoff_mixed_m: 3,
            cutoff_len: 16,
            force: false,
            workers: 1,
            shards: 1,
            checkpoint: None,
            max_shards_per_session: None,
            all_witnesses: false,
        }
    }
}

/// Recovered parameters of a standard pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardParams {
    Type2(Type2Params),
    Mixed(MixedParams),
}

impl StandardParams {
    fn to_record(&self) -> ParamsRecord {
        match self {
            StandardParams::Type2(p) => ParamsRecord::from(p),
            StandardParams::Mixed(p) => ParamsRecord::from(p),
        }
    }
}

/// Outcome of matching a pair against its standard family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Standard(StandardParams),
    NonStandard,
    NotComplementary,
}

impl Classification {
    pub fn is_standard(&self) -> bool {
        matches!(self, Classification::Standard(_))
    }

    pub fn to_record(&self) -> ClassificationRecord {
        match self {
            Classification::Standard(p) => ClassificationRecord::Standard {
                params: p.to_record(),
            },
            Classification::NonStandard => ClassificationRecord::NonStandard,
            Classification::NotComplementary => ClassificationRecord::NotComplementary,
        }
    }
}

/// Read the candidate Type-II parameters off the ANFs, rebuild the standard
/// pair and compare tables; any mismatch (a stray monomial, a wrong
/// quadratic part) makes the rebuilt pair differ and classifies as
/// non-standard.
pub fn classify_type2_array_pair(f: &BooleanFunction, g: &BooleanFunction) -> Classification {
    if f.variables() != g.variables() || !is_type2_array_pair(f, g) {
        return Classification::NotComplementary;
    }
    let m = f.variables();
    let anf_f = f.to_anf();
    let delta = f.add(g).expect("equal arity").to_anf();
    let params = Type2Params {
        m,
        c: (1..=m).map(|i| anf_f.contains(1 << (i - 1))).collect(),
        c0: anf_f.contains(0),
        cprime: delta.contains(0),
    };
    let rebuilt = standard_type2_array_pair(&params);
    if rebuilt.f() == f && rebuilt.g() == g {
        Classification::Standard(StandardParams::Type2(params))
    } else {
        Classification::NonStandard
    }
}

/// Mixed-family analogue of [`classify_type2_array_pair`]; the bilinear
/// x0-row of the ANF yields the e vector.
pub fn classify_mixed_array_pair(f: &BooleanFunction, g: &BooleanFunction) -> Classification {
    if f.variables() != g.variables() || f.variables() == 0 || !is_mixed_pair(f, g) {
        return Classification::NotComplementary;
    }
    let m = f.variables() - 1;
    let x0 = 1u32 << m;
    let anf_f = f.to_anf();
    let delta = f.add(g).expect("equal arity").to_anf();
    let params = MixedParams {
        m,
        e: (1..=m).map(|i| anf_f.contains(x0 | 1 << (i - 1))).collect(),
        c: (1..=m).map(|i| anf_f.contains(1 << (i - 1))).collect(),
        c0: anf_f.contains(x0),
        cconst: anf_f.contains(0),
        e0: delta.contains(x0),
        cprime: delta.contains(0),
    };
    let rebuilt = standard_mixed_array_pair(&params);
    if rebuilt.f() == f && rebuilt.g() == g {
        Classification::Standard(StandardParams::Mixed(params))
    } else {
        Classification::NonStandard
    }
}

/// Which sequence predicate a witness search certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    TypeII,
    TypeIII,
}

/// A permutation and standard array pair certifying that a sequence pair is
/// a projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionWitness {
    pub perm: Permutation,
    pub pair: ArrayPair,
    pub params: StandardParams,
}

impl ProjectionWitness {
    pub fn to_record(&self) -> WitnessRecord {
        WitnessRecord {
            perm: self.perm.to_string(),
            array: ArrayPairRecord::from_pair(&self.pair).with_params(self.params.to_record()),
        }
    }
}

/// Search all permutations (lexicographic image order) for array pairs that
/// project onto the given sequence pair and classify as standard. Stops at
/// the first hit unless `all` is set.
pub fn find_projection_witnesses(
    f: &Sequence,
    g: &Sequence,
    kind: SequenceKind,
    all: bool,
) -> Result<Vec<ProjectionWitness>> {
    if f.len() != g.len() {
        return Err(Error::InvalidInput(format!(
            "sequences have lengths {} and {}",
            f.len(),
            g.len()
        )));
    }
    let len = f.len();
    if !len.is_power_of_two() {
        return Err(Error::InvalidInput(format!(
            "witness search needs a power-of-2 length, got {len}"
        )));
    }
    let mut witnesses = vec![];
    match kind {
        SequenceKind::TypeII => {
            if !is_type2_seq_pair(f, g)? {
                return Ok(witnesses);
            }
            let m = len.trailing_zeros() as usize;
            for perm in Permutation::all(m) {
                let af = unproject_array(f, &perm)?;
                let ag = unproject_array(g, &perm)?;
                if let Classification::Standard(params) = classify_type2_array_pair(&af, &ag) {
                    witnesses.push(ProjectionWitness {
                        perm,
                        pair: ArrayPair::new(af, ag, PairKind::TypeII)?,
                        params,
                    });
                    if !all {
                        break;
                    }
                }
            }
        }
        SequenceKind::TypeIII => {
            if !is_type3_seq_pair(f, g)? {
                return Ok(witnesses);
            }
            if len == 1 {
                // no room for the x0 coordinate
                return Ok(witnesses);
            }
            let m = len.trailing_zeros() as usize - 1;
            for perm in Permutation::all(m) {
                let af = unproject_mixed(f, &perm)?;
                let ag = unproject_mixed(g, &perm)?;
                if let Classification::Standard(params) = classify_mixed_array_pair(&af, &ag) {
                    witnesses.push(ProjectionWitness {
                        perm,
                        pair: ArrayPair::new(af, ag, PairKind::Mixed)?,
                        params,
                    });
                    if !all {
                        break;
                    }
                }
            }
        }
    }
    Ok(witnesses)
}

/// First witness in lexicographic permutation order, if any.
pub fn find_projection_witness(
    f: &Sequence,
    g: &Sequence,
    kind: SequenceKind,
) -> Result<Option<ProjectionWitness>> {
    Ok(find_projection_witnesses(f, g, kind, false)?.into_iter().next())
}

/// One found pair of an array search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayFoundEntry {
    pub f: String,
    pub g: String,
    pub x0_index: Option<usize>,
    pub classification: ClassificationRecord,
}

/// One found pair of a sequence search; `witness` is null when no standard
/// array pair projects onto it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqFoundEntry {
    pub f: String,
    pub g: String,
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_witnesses: Option<Vec<WitnessRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FoundEntry {
    Array(ArrayFoundEntry),
    Seq(SeqFoundEntry),
}

pub const REPORT_SCHEMA: &str = "compair-report/1";

/// Deterministic search outcome; serializes to the versioned report JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema: String,
    pub kind: RecordKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    /// Number of ordered pairs found (equals the length of `found`).
    pub count: usize,
    /// Pairs that are complementary but not standard (for sequence kinds:
    /// pairs without a projection witness).
    pub nonstandard_count: usize,
    /// Pairs with f = g.
    pub self_paired_count: usize,
    /// Count after identifying (f, g) with (g, f); equals
    /// (count - self_paired_count) / 2 + self_paired_count.
    pub unordered_count: usize,
    pub found: Vec<FoundEntry>,
}

impl SearchReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub const CSV_HEADER: &'static str = "kind,size,count,nonstandard_count,runtime_ms";

    /// One CSV summary row; the caller supplies the measured wall time so
    /// that report bytes themselves stay deterministic.
    pub fn csv_row(&self, runtime_ms: u128) -> String {
        let size = self.m.or(self.length).unwrap_or(0);
        format!(
            "{},{},{},{},{}",
            self.kind, size, self.count, self.nonstandard_count, runtime_ms
        )
    }

    /// Hex pair list decoded to packed table integers.
    pub fn found_values(&self) -> Vec<(u64, u64)> {
        let bits = self
            .m
            .map(|m| 1usize << m)
            .or(self.length)
            .expect("report carries m or L");
        self.found
            .iter()
            .map(|entry| {
                let (f, g) = match entry {
                    FoundEntry::Array(e) => (&e.f, &e.g),
                    FoundEntry::Seq(e) => (&e.f, &e.g),
                };
                let decode = |s: &str| {
                    crate::boolfun::bits_from_hex(s, bits)
                        .expect("report hex")
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (t, &b)| acc | (b as u64) << t)
                };
                (decode(f), decode(g))
            })
            .collect()
    }
}

// ---- meet-in-the-middle machinery ----

/// Base-3 packing of {0,1}^m points so that exponent-vector sums of two
/// points index the {0,1,2}^m grid: pre3[a] + pre3[b] is the dense index of
/// z^(a+b). No carries occur because each digit stays at most 2.
fn pre3_table(m: usize) -> Vec<usize> {
    (0..1usize << m)
        .map(|x| {
            let mut v = 0usize;
            let mut p = 1usize;
            for k in 0..m {
                if x >> k & 1 == 1 {
                    v += p;
                }
                p *= 3;
            }
            v
        })
        .collect()
}

fn signs_from_index(bits: usize, index: u64) -> Vec<i8> {
    (0..bits)
        .map(|t| if index >> t & 1 == 1 { -1 } else { 1 })
        .collect()
}

/// Dense coefficients of F(z) * F(z') where F(z') optionally negates the
/// variable at `negate_bit` (the mixed product F(z, z0) F(z, -z0)).
fn array_self_product(
    signs: &[i8],
    pre3: &[usize],
    grid: usize,
    negate_bit: Option<usize>,
) -> Vec<i64> {
    let mut dense = vec![0i64; grid];
    for (a, &sa) in signs.iter().enumerate() {
        for (b, &sb) in signs.iter().enumerate() {
            let mut s = (sa as i64) * (sb as i64);
            if let Some(bit) = negate_bit {
                if b >> bit & 1 == 1 {
                    s = -s;
                }
            }
            dense[pre3[a] + pre3[b]] += s;
        }
    }
    dense
}

/// Dense coefficients of F(z)^2, or F(z) F(-z) when `negate_odd` is set.
fn seq_self_product(signs: &[i8], negate_odd: bool) -> Vec<i64> {
    let n = signs.len();
    let mut dense = vec![0i64; 2 * n - 1];
    for (a, &sa) in signs.iter().enumerate() {
        for (b, &sb) in signs.iter().enumerate() {
            let mut s = (sa as i64) * (sb as i64);
            if negate_odd && b & 1 == 1 {
                s = -s;
            }
            dense[a + b] += s;
        }
    }
    dense
}

/// Dense 2 * prod (1 + z_k^2) over the {0,1,2}^m grid.
fn rhs_type2_array(m: usize, pre3: &[usize], grid: usize) -> Vec<i64> {
    let mut rhs = vec![0i64; grid];
    for subset in 0..1usize << m {
        rhs[2 * pre3[subset]] = 2;
    }
    rhs
}

/// Dense 2 (1 - z0^2) prod (1 + z_k^2); x0 is the top variable.
fn rhs_mixed_array(nvars: usize, pre3: &[usize], grid: usize) -> Vec<i64> {
    let m = nvars - 1;
    let x0_sq = 2 * pre3[1 << m];
    let mut rhs = vec![0i64; grid];
    for subset in 0..1usize << m {
        rhs[2 * pre3[subset]] = 2;
        rhs[2 * pre3[subset] + x0_sq] = -2;
    }
    rhs
}

fn rhs_type2_seq(len: usize) -> Vec<i64> {
    let mut rhs = vec![0i64; 2 * len - 1];
    for j in 0..len {
        rhs[2 * j] = 2;
    }
    rhs
}

fn rhs_type3_seq(len: usize) -> Vec<i64> {
    let mut rhs = vec![0i64; 2 * len - 1];
    for j in 0..len {
        rhs[2 * j] = if j % 2 == 0 { 2 } else { -2 };
    }
    rhs
}

fn validate_options(options: &SearchOptions, n_items: u64) -> Result<()> {
    if options.workers == 0 {
        return Err(Error::InvalidInput("workers must be >= 1".into()));
    }
    if options.shards == 0 || !options.shards.is_power_of_two() {
        return Err(Error::InvalidInput(
            "shards must be a power of two >= 1".into(),
        ));
    }
    if options.shards as u64 > n_items {
        return Err(Error::InvalidInput(format!(
            "{} shards exceed the {} candidates",
            options.shards, n_items
        )));
    }
    Ok(())
}

/// Core meet-in-the-middle driver over `0..n_items` candidate indices.
///
/// `product` must map a candidate to the dense coefficients of its
/// self-product; a pair (f, g) matches when product(f) = rhs - product(g).
/// Every match is re-verified with `verify` before being returned.
fn run_mitm<P, V>(
    n_items: u64,
    rhs: &[i64],
    product: P,
    verify: V,
    options: &SearchOptions,
) -> Result<Vec<(u64, u64)>>
where
    P: Fn(u64) -> Vec<i64> + Sync,
    V: Fn(u64, u64) -> bool + Sync,
{
    validate_options(options, n_items)?;
    let shards = options.shards as u64;
    let shard_size = n_items / shards;

    let done: Vec<CheckpointRecord> = match &options.checkpoint {
        Some(path) => checkpoint::read_records(path)?,
        None => vec![],
    };
    for record in &done {
        let end = (u64::from(record.shard) + 1).checked_mul(shard_size);
        if u64::from(record.shard) >= shards || end != Some(record.last_f + 1) {
            return Err(Error::InvalidInput(format!(
                "checkpoint record (shard {}, last_f {:#x}) does not fit a \
                 {}-shard run over {} candidates",
                record.shard, record.last_f, shards, n_items
            )));
        }
    }
    let is_done = |s: u32| done.iter().any(|r| r.shard == s);

    let mut pairs: Vec<(u64, u64)> = match &options.checkpoint {
        Some(path) => checkpoint::read_pairs(path, &is_done)?,
        None => vec![],
    };

    let mut processed = 0usize;
    let mut pending = false;
    for shard in 0..shards {
        if is_done(shard as u32) {
            continue;
        }
        if let Some(limit) = options.max_shards_per_session {
            if processed >= limit {
                pending = true;
                break;
            }
        }
        let range = shard * shard_size..(shard + 1) * shard_size;

        // phase 1: index this shard's products
        let mut index: HashMap<Vec<i64>, Vec<u64>> = HashMap::new();
        for f in range.clone() {
            index.entry(product(f)).or_default().push(f);
        }

        // phase 2: scan all candidates g in parallel
        let shard_pairs = scan_candidates(n_items, rhs, &product, &index, options.workers);

        if let Some(path) = &options.checkpoint {
            checkpoint::append_record(
                path,
                &CheckpointRecord {
                    shard: shard as u32,
                    last_f: range.end - 1,
                    partial_count: shard_pairs.len() as u64,
                },
                &shard_pairs,
            )?;
        }
        pairs.extend(shard_pairs);
        processed += 1;
    }

    if pending {
        return Err(Error::ResourceLimit(
            "session shard limit reached; rerun with the same checkpoint to resume".into(),
        ));
    }

    pairs.sort_unstable();
    pairs.dedup();
    for &(f, g) in &pairs {
        if !verify(f, g) {
            return Err(Error::InternalError(format!(
                "candidate pair ({f:#x}, {g:#x}) failed exact verification"
            )));
        }
    }
    Ok(pairs)
}

/// Lookup phase: for each g, find all indexed f with product(f) = rhs - product(g).
fn scan_candidates<P>(
    n_items: u64,
    rhs: &[i64],
    product: &P,
    index: &HashMap<Vec<i64>, Vec<u64>>,
    workers: usize,
) -> Vec<(u64, u64)>
where
    P: Fn(u64) -> Vec<i64> + Sync,
{
    let workers = workers.min(n_items as usize).max(1);
    let chunk = n_items.div_ceil(workers as u64);
    let mut per_worker: Vec<Vec<(u64, u64)>> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let start = w * chunk;
                let end = ((w + 1) * chunk).min(n_items);
                scope.spawn(move || {
                    let mut found = vec![];
                    for g in start..end {
                        let gp = product(g);
                        let target: Vec<i64> =
                            rhs.iter().zip(&gp).map(|(&r, &p)| r - p).collect();
                        if let Some(fs) = index.get(&target) {
                            found.extend(fs.iter().map(|&f| (f, g)));
                        }
                    }
                    found
                })
            })
            .collect();
        for handle in handles {
            per_worker.push(handle.join().expect("search worker"));
        }
    });
    per_worker.concat()
}

// ---- the four search operations ----

/// All ordered Type-II array pairs on m variables.
pub fn search_type2_array_pairs(m: usize, options: &SearchOptions) -> Result<SearchReport> {
    if m > MAX_TYPE2_ARRAY_M {
        return Err(Error::ResourceLimit(format!(
            "Type-II array search supports m <= {MAX_TYPE2_ARRAY_M}, got {m}"
        )));
    }
    if m > options.cutoff_type2_m && !options.force {
        return Err(Error::ResourceLimit(format!(
            "m={m} exceeds the cutoff {}; pass force to override",
            options.cutoff_type2_m
        )));
    }
    let bits = 1usize << m;
    let n_items = 1u64 << bits;
    let pre3 = pre3_table(m);
    let grid = pre3[bits - 1] * 2 + 1; // largest index is all-twos
    let rhs = rhs_type2_array(m, &pre3, grid);
    let pairs = run_mitm(
        n_items,
        &rhs,
        |idx| array_self_product(&signs_from_index(bits, idx), &pre3, grid, None),
        |fi, gi| {
            is_type2_array_pair(
                &BooleanFunction::from_index(m, fi).expect("index in range"),
                &BooleanFunction::from_index(m, gi).expect("index in range"),
            )
        },
        options,
    )?;
    Ok(build_array_report(
        RecordKind::Type2Array,
        m,
        None,
        pairs,
        classify_type2_array_pair,
    ))
}

/// All ordered mixed Type-II/III array pairs with m Type-II variables plus x0.
pub fn search_mixed_array_pairs(m: usize, options: &SearchOptions) -> Result<SearchReport> {
    if m > MAX_MIXED_ARRAY_M {
        return Err(Error::ResourceLimit(format!(
            "mixed array search supports m <= {MAX_MIXED_ARRAY_M}, got {m}"
        )));
    }
    if m > options.cutoff_mixed_m && !options.force {
        return Err(Error::ResourceLimit(format!(
            "m={m} exceeds the cutoff {}; pass force to override",
            options.cutoff_mixed_m
        )));
    }
    let nvars = m + 1;
    let bits = 1usize << nvars;
    let n_items = 1u64 << bits;
    let pre3 = pre3_table(nvars);
    let grid = pre3[bits - 1] * 2 + 1;
    let rhs = rhs_mixed_array(nvars, &pre3, grid);
    let pairs = run_mitm(
        n_items,
        &rhs,
        |idx| array_self_product(&signs_from_index(bits, idx), &pre3, grid, Some(nvars - 1)),
        |fi, gi| {
            is_mixed_pair(
                &BooleanFunction::from_index(nvars, fi).expect("index in range"),
                &BooleanFunction::from_index(nvars, gi).expect("index in range"),
            )
        },
        options,
    )?;
    Ok(build_array_report(
        RecordKind::Mixed,
        nvars,
        Some(nvars),
        pairs,
        classify_mixed_array_pair,
    ))
}

/// All ordered Type-II sequence pairs of length L, with projection
/// witnesses where L is a power of two.
pub fn search_type2_sequence_pairs(len: usize, options: &SearchOptions) -> Result<SearchReport> {
    search_sequence_pairs(len, SequenceKind::TypeII, options)
}

/// All ordered Type-III sequence pairs of length L, with mixed-pair
/// projection witnesses where L is a power of two.
pub fn search_type3_sequence_pairs(len: usize, options: &SearchOptions) -> Result<SearchReport> {
    search_sequence_pairs(len, SequenceKind::TypeIII, options)
}

fn search_sequence_pairs(
    len: usize,
    kind: SequenceKind,
    options: &SearchOptions,
) -> Result<SearchReport> {
    if len == 0 {
        return Err(Error::InvalidInput("sequence length must be >= 1".into()));
    }
    if len > MAX_SEQUENCE_LEN {
        return Err(Error::ResourceLimit(format!(
            "sequence search supports L <= {MAX_SEQUENCE_LEN}, got {len}"
        )));
    }
    if len > options.cutoff_len && !options.force {
        return Err(Error::ResourceLimit(format!(
            "L={len} exceeds the cutoff {}; pass force to override",
            options.cutoff_len
        )));
    }
    let n_items = 1u64 << len;
    let negate_odd = kind == SequenceKind::TypeIII;
    let rhs = match kind {
        SequenceKind::TypeII => rhs_type2_seq(len),
        SequenceKind::TypeIII => rhs_type3_seq(len),
    };
    let pairs = run_mitm(
        n_items,
        &rhs,
        |idx| seq_self_product(&signs_from_index(len, idx), negate_odd),
        |fi, gi| {
            let f = Sequence::from_index(len, fi).expect("index in range");
            let g = Sequence::from_index(len, gi).expect("index in range");
            match kind {
                SequenceKind::TypeII => is_type2_seq_pair(&f, &g).expect("equal lengths"),
                SequenceKind::TypeIII => is_type3_seq_pair(&f, &g).expect("equal lengths"),
            }
        },
        options,
    )?;

    let record_kind = match kind {
        SequenceKind::TypeII => RecordKind::Type2Seq,
        SequenceKind::TypeIII => RecordKind::Type3Seq,
    };
    let witnessable = len.is_power_of_two();
    let mut found = Vec::with_capacity(pairs.len());
    let mut unwitnessed = 0usize;
    let mut self_paired = 0usize;
    for &(fi, gi) in &pairs {
        if fi == gi {
            self_paired += 1;
        }
        let f = Sequence::from_index(len, fi).expect("index in range");
        let g = Sequence::from_index(len, gi).expect("index in range");
        let witnesses = if witnessable {
            find_projection_witnesses(&f, &g, kind, options.all_witnesses)?
        } else {
            vec![]
        };
        if witnesses.is_empty() {
            unwitnessed += 1;
        }
        found.push(FoundEntry::Seq(SeqFoundEntry {
            f: f.to_hex(),
            g: g.to_hex(),
            witness: witnesses.first().map(ProjectionWitness::to_record),
            all_witnesses: options
                .all_witnesses
                .then(|| witnesses.iter().map(ProjectionWitness::to_record).collect()),
        }));
    }
    let count = pairs.len();
    Ok(SearchReport {
        schema: REPORT_SCHEMA.to_string(),
        kind: record_kind,
        m: None,
        length: Some(len),
        count,
        nonstandard_count: unwitnessed,
        self_paired_count: self_paired,
        unordered_count: (count - self_paired) / 2 + self_paired,
        found,
    })
}

fn build_array_report(
    kind: RecordKind,
    nvars: usize,
    x0_index: Option<usize>,
    pairs: Vec<(u64, u64)>,
    classify: impl Fn(&BooleanFunction, &BooleanFunction) -> Classification,
) -> SearchReport {
    let mut nonstandard = 0usize;
    let mut self_paired = 0usize;
    let found: Vec<FoundEntry> = pairs
        .iter()
        .map(|&(fi, gi)| {
            if fi == gi {
                self_paired += 1;
            }
            let f = BooleanFunction::from_index(nvars, fi).expect("index in range");
            let g = BooleanFunction::from_index(nvars, gi).expect("index in range");
            let classification = classify(&f, &g);
            if !classification.is_standard() {
                nonstandard += 1;
            }
            FoundEntry::Array(ArrayFoundEntry {
                f: f.to_hex(),
                g: g.to_hex(),
                x0_index,
                classification: classification.to_record(),
            })
        })
        .collect();
    let count = pairs.len();
    SearchReport {
        schema: REPORT_SCHEMA.to_string(),
        kind,
        m: Some(nvars),
        length: None,
        count,
        nonstandard_count: nonstandard,
        self_paired_count: self_paired,
        unordered_count: (count - self_paired) / 2 + self_paired,
        found,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{enumerate_standard_mixed, enumerate_standard_type2};
    use std::collections::BTreeSet;

    fn bf(bits: &[u8], m: usize) -> BooleanFunction {
        BooleanFunction::from_truth_table(bits, m).unwrap()
    }

    fn found_set(report: &SearchReport) -> BTreeSet<(u64, u64)> {
        report.found_values().into_iter().collect()
    }

    fn standard_type2_set(m: usize) -> BTreeSet<(u64, u64)> {
        enumerate_standard_type2(m)
            .iter()
            .map(|p| (p.f().table_value(), p.g().table_value()))
            .collect()
    }

    fn standard_mixed_set(m: usize) -> BTreeSet<(u64, u64)> {
        enumerate_standard_mixed(m)
            .iter()
            .map(|p| (p.f().table_value(), p.g().table_value()))
            .collect()
    }

    #[test]
    fn classify_type2_examples() {
        let f = bf(&[0, 0, 0, 1], 2);
        let g = bf(&[0, 1, 1, 1], 2);
        match classify_type2_array_pair(&f, &g) {
            Classification::Standard(StandardParams::Type2(p)) => {
                assert_eq!(p.c, vec![false, false]);
                assert!(!p.c0);
                assert!(!p.cprime);
            }
            other => panic!("expected standard, got {other:?}"),
        }

        let zero = BooleanFunction::constant(2, false);
        assert_eq!(
            classify_type2_array_pair(&zero, &zero),
            Classification::NotComplementary
        );
    }

    #[test]
    fn classify_mixed_examples() {
        // (f, g) = (0, x1) with x0 appended (m = 1)
        let f = bf(&[0, 0, 0, 0], 2);
        let g = bf(&[0, 1, 0, 1], 2);
        match classify_mixed_array_pair(&f, &g) {
            Classification::Standard(StandardParams::Mixed(p)) => {
                assert_eq!(p.m, 1);
                assert_eq!(p.e, vec![false]);
                assert_eq!(p.c, vec![false]);
                assert!(!p.c0 && !p.cconst && !p.e0 && !p.cprime);
            }
            other => panic!("expected standard, got {other:?}"),
        }

        let bad = bf(&[0, 0, 0, 1], 2); // x0 x1 is not complementary with f
        assert_eq!(
            classify_mixed_array_pair(&bad, &bf(&[0, 0, 0, 0], 2)),
            Classification::NotComplementary
        );
    }

    #[test]
    fn classification_round_trips_through_parameters() {
        for m in 0..=3usize {
            for pair in enumerate_standard_type2(m) {
                match classify_type2_array_pair(pair.f(), pair.g()) {
                    Classification::Standard(StandardParams::Type2(p)) => {
                        assert_eq!(&standard_type2_array_pair(&p), &pair);
                    }
                    other => panic!("m={m}: expected standard, got {other:?}"),
                }
            }
        }
        for m in 0..=2usize {
            for pair in enumerate_standard_mixed(m) {
                match classify_mixed_array_pair(pair.f(), pair.g()) {
                    Classification::Standard(StandardParams::Mixed(p)) => {
                        assert_eq!(&standard_mixed_array_pair(&p), &pair);
                    }
                    other => panic!("m={m}: expected standard, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn search_type2_arrays_small_m() {
        let options = SearchOptions::default();
        for (m, expected) in [(0usize, 4usize), (1, 8), (2, 16), (3, 32)] {
            let report = search_type2_array_pairs(m, &options).unwrap();
            assert_eq!(report.count, expected, "m={m}");
            assert_eq!(report.nonstandard_count, 0);
            assert_eq!(found_set(&report), standard_type2_set(m));
        }
    }

    #[test]
    fn search_mixed_arrays_small_m() {
        let options = SearchOptions::default();
        for (m, expected) in [(0usize, 16usize), (1, 64), (2, 256)] {
            let report = search_mixed_array_pairs(m, &options).unwrap();
            assert_eq!(report.count, expected, "m={m}");
            assert_eq!(report.nonstandard_count, 0);
            assert_eq!(found_set(&report), standard_mixed_set(m));
        }
    }

    #[test]
    fn search_type2_sequences_small_lengths() {
        let options = SearchOptions::default();
        let report = search_type2_sequence_pairs(2, &options).unwrap();
        assert_eq!(report.count, 8);
        assert_eq!(report.nonstandard_count, 0);

        let report = search_type2_sequence_pairs(4, &options).unwrap();
        assert_eq!(report.count, 16);
        assert_eq!(report.nonstandard_count, 0);

        // no Type-II pairs at non-power-of-2 lengths
        for len in [3usize, 5, 6, 7] {
            let report = search_type2_sequence_pairs(len, &options).unwrap();
            assert_eq!(report.count, 0, "L={len}");
        }
    }

    #[test]
    fn search_type3_sequences_small_lengths() {
        let options = SearchOptions::default();
        let report = search_type3_sequence_pairs(2, &options).unwrap();
        assert_eq!(report.count, 16);
        assert_eq!(report.nonstandard_count, 0);
        assert_eq!(report.self_paired_count, 4);
        assert_eq!(report.unordered_count, 10);

        let report = search_type3_sequence_pairs(4, &options).unwrap();
        assert_eq!(report.count, 64);
        assert_eq!(report.nonstandard_count, 0);
    }

    #[test]
    fn type3_sequences_of_odd_length_exist_but_lack_witnesses() {
        let report = search_type3_sequence_pairs(3, &SearchOptions::default()).unwrap();
        assert!(report.count > 0);
        assert_eq!(report.nonstandard_count, report.count);
        for entry in &report.found {
            match entry {
                FoundEntry::Seq(e) => assert!(e.witness.is_none()),
                _ => panic!("expected sequence entries"),
            }
        }
    }

    #[test]
    fn witness_examples() {
        let f = Sequence::from_bits(&[0, 0, 0, 1]).unwrap();
        let g = Sequence::from_bits(&[0, 1, 1, 1]).unwrap();
        let witness = find_projection_witness(&f, &g, SequenceKind::TypeII)
            .unwrap()
            .expect("standard pair must be witnessed");
        assert_eq!(witness.perm.to_string(), "1,2");
        match witness.params {
            StandardParams::Type2(ref p) => {
                assert_eq!(p.to_index(), 0);
            }
            _ => panic!("expected Type-II parameters"),
        }

        let f = Sequence::from_bits(&[0, 0, 0, 0]).unwrap();
        let g = Sequence::from_bits(&[0, 0, 1, 1]).unwrap();
        let witness = find_projection_witness(&f, &g, SequenceKind::TypeIII)
            .unwrap()
            .expect("standard pair must be witnessed");
        match witness.params {
            StandardParams::Mixed(ref p) => {
                assert_eq!(p.m, 1);
                assert_eq!(p.to_index(), 0);
            }
            _ => panic!("expected mixed parameters"),
        }

        // non-complementary pairs are gated out
        let f = Sequence::from_bits(&[0, 0, 0, 0]).unwrap();
        let g = Sequence::from_bits(&[0, 0, 0, 0]).unwrap();
        assert!(find_projection_witness(&f, &g, SequenceKind::TypeII)
            .unwrap()
            .is_none());

        // non-power-of-2 lengths are an input error
        let f = Sequence::from_bits(&[0, 0, 0]).unwrap();
        assert!(matches!(
            find_projection_witness(&f, &f, SequenceKind::TypeIII),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn resource_limits() {
        let options = SearchOptions::default();
        assert!(matches!(
            search_type2_array_pairs(5, &options),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            search_mixed_array_pairs(4, &options),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            search_type2_sequence_pairs(17, &options),
            Err(Error::ResourceLimit(_))
        ));
        // the hard maxima hold even with force
        let forced = SearchOptions {
            force: true,
            ..SearchOptions::default()
        };
        assert!(matches!(
            search_type2_array_pairs(6, &forced),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            search_type2_sequence_pairs(33, &forced),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn reports_are_identical_across_workers_and_shards() {
        let base = SearchOptions::default();
        let reference = search_type2_array_pairs(2, &base).unwrap().to_json_pretty();
        for workers in [2usize, 5] {
            let options = SearchOptions {
                workers,
                ..SearchOptions::default()
            };
            let report = search_type2_array_pairs(2, &options).unwrap();
            assert_eq!(report.to_json_pretty(), reference);
        }
        for shards in [2usize, 4] {
            let options = SearchOptions {
                shards,
                ..SearchOptions::default()
            };
            let report = search_type2_array_pairs(2, &options).unwrap();
            assert_eq!(report.to_json_pretty(), reference);
        }
    }

    #[test]
    fn checkpointed_search_resumes_to_the_same_report() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("type2.ckpt");
        let reference = search_type2_sequence_pairs(4, &SearchOptions::default())
            .unwrap()
            .to_json_pretty();

        // first session: two of four shards, then a forced stop
        let session1 = SearchOptions {
            shards: 4,
            checkpoint: Some(path.clone()),
            max_shards_per_session: Some(2),
            ..SearchOptions::default()
        };
        assert!(matches!(
            search_type2_sequence_pairs(4, &session1),
            Err(Error::ResourceLimit(_))
        ));
        assert_eq!(checkpoint::read_records(&path).unwrap().len(), 2);

        // second session resumes and completes
        let session2 = SearchOptions {
            shards: 4,
            checkpoint: Some(path.clone()),
            ..SearchOptions::default()
        };
        let report = search_type2_sequence_pairs(4, &session2).unwrap();
        assert_eq!(report.to_json_pretty(), reference);
        assert_eq!(checkpoint::read_records(&path).unwrap().len(), 4);

        // a third run over the finished checkpoint rescans nothing
        let report = search_type2_sequence_pairs(4, &session2).unwrap();
        assert_eq!(report.to_json_pretty(), reference);
    }

    #[test]
    fn checkpoint_geometry_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("geom.ckpt");
        let session = SearchOptions {
            shards: 4,
            checkpoint: Some(path.clone()),
            ..SearchOptions::default()
        };
        search_type2_sequence_pairs(4, &session).unwrap();
        // resuming with a different shard count must fail, not mix results
        let wrong = SearchOptions {
            shards: 2,
            checkpoint: Some(path),
            ..SearchOptions::default()
        };
        assert!(matches!(
            search_type2_sequence_pairs(4, &wrong),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn option_validation() {
        let options = SearchOptions {
            workers: 0,
            ..SearchOptions::default()
        };
        assert!(matches!(
            search_type2_array_pairs(1, &options),
            Err(Error::InvalidInput(_))
        ));
        let options = SearchOptions {
            shards: 3,
            ..SearchOptions::default()
        };
        assert!(matches!(
            search_type2_array_pairs(1, &options),
            Err(Error::InvalidInput(_))
        ));
    }
}
