//! The element calculus of the full group of a sofic beta-shift: two-row
//! tables of marked words encoding prefix replacements, their validation,
//! composition by common refinement, inversion, and the faithful
//! realization as right-continuous piecewise-linear bijections of [0, 1)
//! with breakpoints in Q(beta) and slopes in beta^Z.
//!
//! Element equality is equality of canonical PL functions; tables are a
//! redundant presentation (many tables, one map).

use crate::beta_shift::Word;
use crate::error::{Error, Result};
use crate::number_core::{BetaContext, BetaNumber};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Table composition refines rows one at a time; this caps the total
/// number of refinement steps against pathological inputs.
const REFINE_CAP: usize = 100_000;

/// A word together with a follower-atom mark: the cylinder of `word`
/// restricted to tails in atom `class`. Carries its exact interval.
#[derive(Clone)]
pub struct MarkedWord {
    word: Word,
    class: usize,
    l: BetaNumber,
    r: BetaNumber,
}

impl fmt::Debug for MarkedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MarkedWord({self})")
    }
}

impl fmt::Display for MarkedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})[{}]", self.word, self.class)
    }
}

impl PartialEq for MarkedWord {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.class == other.class
    }
}
impl Eq for MarkedWord {}

impl MarkedWord {
    /// Mark `word` with atom `class` (1-based). The word must be
    /// compatible: its follower weight must reach the atom's upper
    /// endpoint.
    pub fn new(word: Word, class: usize) -> Result<MarkedWord> {
        let ctx = word.context().clone();
        let sys = ctx.sofic_system()?;
        let dim = sys.dimension();
        if class == 0 || class > dim {
            return Err(Error::OutOfRange(format!(
                "class {class} outside 1..={dim}"
            )));
        }
        let (_, upper) = sys.projections().atom_bounds(class);
        if word.kms_value().compare(upper)? == Ordering::Less {
            return Err(Error::NotAdmissible(format!(
                "word {word} is not compatible with class {class}"
            )));
        }
        Ok(Self::new_unchecked(word, class))
    }

    fn new_unchecked(word: Word, class: usize) -> MarkedWord {
        let ctx = word.context().clone();
        let sys = ctx.sofic_system().expect("marked words live in sofic contexts");
        let (lo, hi) = sys.projections().atom_bounds(class);
        let scale = ctx.beta_pow(-(word.len() as i64));
        let base = word.l_value();
        let l = &base + &(&scale * lo);
        let r = &base + &(&scale * hi);
        debug_assert!(word.kms_value() >= *hi);
        MarkedWord { word, class, l, r }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// 1-based atom index.
    pub fn class(&self) -> usize {
        self.class
    }

    pub fn l(&self) -> &BetaNumber {
        &self.l
    }

    pub fn r(&self) -> &BetaNumber {
        &self.r
    }

    pub fn context(&self) -> &BetaContext {
        self.word.context()
    }

    /// Children along the graph edges out of this class: one marked word
    /// per edge, extending the word by the edge label and retargeting the
    /// class. Their intervals tile this interval exactly.
    pub fn refine(&self) -> Vec<MarkedWord> {
        let ctx = self.word.context();
        let sys = ctx.sofic_system().expect("marked words live in sofic contexts");
        let mut children: Vec<MarkedWord> = sys
            .graph()
            .edges_from(self.class)
            .map(|e| {
                let mut letters = self.word.letters().to_vec();
                letters.push(e.label);
                Self::new_unchecked(ctx.word_unchecked(letters), e.to)
            })
            .collect();
        children.sort_by(|a, b| a.l.cmp(&b.l));
        children
    }
}

/// One prefix-replacement rule: points of the bottom cell move affinely
/// onto the top cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub top: MarkedWord,
    pub bottom: MarkedWord,
}

/// A two-row table over marked words: bottoms tile [0, 1), tops tile
/// [0, 1), and each row's two cells share a class. Rows are kept sorted by
/// bottom left endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTable {
    ctx: BetaContext,
    rows: Vec<TableRow>,
}

impl BetaTable {
    /// Sort, validate, and wrap rows into a table.
    pub fn try_new(ctx: BetaContext, mut rows: Vec<TableRow>) -> Result<BetaTable> {
        rows.sort_by(|a, b| a.bottom.l.cmp(&b.bottom.l));
        let table = BetaTable { ctx, rows };
        table.validate()?;
        Ok(table)
    }

    pub fn context(&self) -> &BetaContext {
        &self.ctx
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    /// Check every table condition, reporting all violations at once:
    /// marked-word compatibility, class agreement within each row, and the
    /// exact tilings of [0, 1) by bottom cells and by top cells.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let sys = self.ctx.sofic_system()?;
        for (i, row) in self.rows.iter().enumerate() {
            if row.top.class != row.bottom.class {
                problems.push(format!(
                    "row {i}: top class {} != bottom class {}",
                    row.top.class, row.bottom.class
                ));
            }
            for (side, cell) in [("top", &row.top), ("bottom", &row.bottom)] {
                if !cell.context().same_context(&self.ctx) {
                    problems.push(format!("row {i}: {side} cell from another context"));
                    continue;
                }
                let (_, upper) = sys.projections().atom_bounds(cell.class);
                if cell.word.kms_value() < *upper {
                    problems.push(format!(
                        "row {i}: {side} word {} incompatible with class {}",
                        cell.word, cell.class
                    ));
                }
            }
        }
        let describe = |side: &str, cells: &mut dyn Iterator<Item = MarkedWord>| {
            let mut cells: Vec<MarkedWord> = cells.collect();
            cells.sort_by(|a, b| a.l.cmp(&b.l));
            let mut issues = Vec::new();
            let mut cursor = self.ctx.zero();
            for c in &cells {
                match c.l.compare(&cursor).expect("same context") {
                    Ordering::Greater => {
                        issues.push(format!(
                            "{side} cover gap at l={}",
                            cursor.to_decimal(12)
                        ));
                    }
                    Ordering::Less => {
                        issues.push(format!(
                            "{side} cells overlap at l={}",
                            c.l.to_decimal(12)
                        ));
                    }
                    Ordering::Equal => {}
                }
                cursor = c.r.clone();
            }
            if cursor != self.ctx.one() {
                issues.push(format!(
                    "{side} cover stops at {}",
                    cursor.to_decimal(12)
                ));
            }
            issues
        };
        problems.extend(describe(
            "bottom",
            &mut self.rows.iter().map(|r| r.bottom.clone()),
        ));
        problems.extend(describe("top", &mut self.rows.iter().map(|r| r.top.clone())));
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidTable(problems))
        }
    }

    /// The identity element: one row `(empty, i) -> (empty, i)` per atom.
    pub fn identity(ctx: &BetaContext) -> Result<BetaTable> {
        let sys = ctx.sofic_system()?;
        let rows = (1..=sys.dimension())
            .map(|i| {
                let cell = MarkedWord::new_unchecked(ctx.empty_word(), i);
                TableRow {
                    top: cell.clone(),
                    bottom: cell,
                }
            })
            .collect();
        BetaTable::try_new(ctx.clone(), rows)
    }

    /// Group inverse: swap the rows and re-sort.
    pub fn invert(&self) -> BetaTable {
        let rows = self
            .rows
            .iter()
            .map(|r| TableRow {
                top: r.bottom.clone(),
                bottom: r.top.clone(),
            })
            .collect();
        BetaTable::try_new(self.ctx.clone(), rows).expect("inverse of a valid table is valid")
    }

    /// The piecewise-linear realization: one segment per row, mapping the
    /// bottom cell onto the top cell with slope beta^(|bottom| - |top|).
    pub fn to_pl(&self) -> PlFunction {
        let segments = self
            .rows
            .iter()
            .map(|row| PlSegment {
                x0: row.bottom.l.clone(),
                x1: row.bottom.r.clone(),
                y0: row.top.l.clone(),
                slope_exp: row.bottom.word.len() as i64 - row.top.word.len() as i64,
            })
            .collect();
        PlFunction::new(self.ctx.clone(), segments)
            .expect("a valid table realizes a PL bijection")
    }

    pub fn to_json_string(&self) -> String {
        let dto = TableJson {
            beta: self.ctx.spec().to_string(),
            rows: self
                .rows
                .iter()
                .map(|r| TableRowJson {
                    top: r.top.word.to_string(),
                    bottom: r.bottom.word.to_string(),
                    class: r.top.class,
                })
                .collect(),
        };
        serde_json::to_string(&dto).expect("table serializes")
    }

    pub fn from_json_str(s: &str) -> Result<BetaTable> {
        let dto: TableJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("table JSON: {e}")))?;
        let ctx = BetaContext::new(&dto.beta)?;
        let rows = dto
            .rows
            .iter()
            .map(|r| {
                let top = MarkedWord::new(ctx.word_from_str(&r.top)?, r.class)?;
                let bottom = MarkedWord::new(ctx.word_from_str(&r.bottom)?, r.class)?;
                Ok(TableRow { top, bottom })
            })
            .collect::<Result<Vec<_>>>()?;
        BetaTable::try_new(ctx, rows)
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    beta: String,
    rows: Vec<TableRowJson>,
}

#[derive(Serialize, Deserialize)]
struct TableRowJson {
    top: String,
    bottom: String,
    class: usize,
}

/// Split one row along the graph edges out of its class. The same letter
/// and retargeted class are appended on both sides, so the realized map
/// is unchanged. Children come back ordered; because both cells append
/// the same (letter, class) pairs, one order sorts both sides, and the
/// children tile exactly the intervals of the parent row.
fn refine_table_row(row: &TableRow) -> Vec<TableRow> {
    let ctx = row.bottom.context();
    let sys = ctx.sofic_system().expect("rows live in sofic contexts");
    let mut rows: Vec<TableRow> = sys
        .graph()
        .edges_from(row.bottom.class)
        .map(|e| {
            let extend = |cell: &MarkedWord| {
                let mut letters = cell.word.letters().to_vec();
                letters.push(e.label);
                MarkedWord::new_unchecked(ctx.word_unchecked(letters), e.to)
            };
            TableRow {
                top: extend(&row.top),
                bottom: extend(&row.bottom),
            }
        })
        .collect();
    rows.sort_by(|a, b| a.bottom.l.cmp(&b.bottom.l));
    rows
}

/// Composite table for `outer` after `inner` (apply `inner` first).
///
/// The top partition of `inner` and the bottom partition of `outer` are
/// refined row by row until they agree cell for cell; refining a row never
/// changes its map, so the composite rows just splice the matched cells.
pub fn compose(outer: &BetaTable, inner: &BetaTable) -> Result<BetaTable> {
    if !outer.ctx.same_context(&inner.ctx) {
        return Err(Error::ContextMismatch);
    }
    let mut lower: Vec<TableRow> = inner.rows.clone(); // match on .top
    let mut upper: Vec<TableRow> = outer.rows.clone(); // match on .bottom
    lower.sort_by(|a, b| a.top.l.cmp(&b.top.l));
    upper.sort_by(|a, b| a.bottom.l.cmp(&b.bottom.l));
    // Refining replaces one row by children that tile its cells, so both
    // lists stay sorted under in-place splicing and matched prefixes never
    // need revisiting.
    let mut i = 0usize;
    let mut steps = 0usize;
    while i < lower.len() || i < upper.len() {
        debug_assert!(i < lower.len() && i < upper.len());
        let a = &lower[i].top;
        let b = &upper[i].bottom;
        // Partitions agree left of cell i, so the cells share their left
        // endpoint; compare the right ends to find the coarser.
        let refine_lower = match a.r.cmp(&b.r) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => {
                if a.class == b.class {
                    debug_assert_eq!(a.word, b.word);
                    i += 1;
                    continue;
                }
                // Equal intervals, different marks: the shorter word sits
                // higher in the refinement tree.
                a.word.len() < b.word.len()
            }
        };
        steps += 1;
        if steps > REFINE_CAP {
            return Err(Error::InvalidTable(vec![format!(
                "composition exceeded {REFINE_CAP} refinement steps"
            )]));
        }
        if refine_lower {
            let row = lower.remove(i);
            lower.splice(i..i, refine_table_row(&row));
        } else {
            let row = upper.remove(i);
            upper.splice(i..i, refine_table_row(&row));
        }
    }
    debug_assert_eq!(lower.len(), upper.len());
    let rows = lower
        .iter()
        .zip(upper.iter())
        .map(|(lo, up)| TableRow {
            top: up.top.clone(),
            bottom: lo.bottom.clone(),
        })
        .collect();
    BetaTable::try_new(outer.ctx.clone(), rows)
}

/// `t1 t2 t1^-1 t2^-1`.
pub fn commutator(t1: &BetaTable, t2: &BetaTable) -> Result<BetaTable> {
    let a = compose(t1, t2)?;
    let b = compose(&a, &t1.invert())?;
    compose(&b, &t2.invert())
}

/// Deterministic generator of valid tables.
///
/// The bottom partition refines the identity cells at random until it has
/// at least `size` cells. The top partition then replays the same
/// refinement moves in lockstep — each move names only the class of the
/// refined cell, and class multisets evolve identically under equal move
/// sequences — so the two class multisets agree by construction. Cells of
/// equal class are finally paired by a seeded shuffle.
pub fn random_table(ctx: &BetaContext, seed: u64, size: usize) -> Result<BetaTable> {
    let sys = ctx.sofic_system()?;
    let dim = sys.dimension();
    let mut rng = SplitMix64::new(seed);

    let identity_cells = || -> Vec<MarkedWord> {
        (1..=dim)
            .map(|i| MarkedWord::new_unchecked(ctx.empty_word(), i))
            .collect()
    };

    let mut bottom = identity_cells();
    let mut moves: Vec<usize> = Vec::new();
    while bottom.len() < size.max(dim) {
        let idx = rng.below(bottom.len());
        let cell = bottom.remove(idx);
        moves.push(cell.class);
        bottom.extend(cell.refine());
    }

    let mut top = identity_cells();
    for &class in &moves {
        let candidates: Vec<usize> = top
            .iter()
            .enumerate()
            .filter(|(_, c)| c.class == class)
            .map(|(i, _)| i)
            .collect();
        let idx = candidates[rng.below(candidates.len())];
        let cell = top.remove(idx);
        top.extend(cell.refine());
    }

    let mut rows = Vec::with_capacity(bottom.len());
    for class in 1..=dim {
        let bottoms: Vec<MarkedWord> = bottom.iter().filter(|c| c.class == class).cloned().collect();
        let mut tops: Vec<MarkedWord> = top.iter().filter(|c| c.class == class).cloned().collect();
        shuffle(&mut tops, &mut rng);
        debug_assert_eq!(bottoms.len(), tops.len());
        for (b, t) in bottoms.into_iter().zip(tops) {
            rows.push(TableRow { top: t, bottom: b });
        }
    }
    BetaTable::try_new(ctx.clone(), rows)
}

/// One affine piece: [x0, x1) maps onto [y0, y0 + beta^slope_exp (x1-x0))
/// by x -> y0 + beta^slope_exp (x - x0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlSegment {
    pub x0: BetaNumber,
    pub x1: BetaNumber,
    pub y0: BetaNumber,
    pub slope_exp: i64,
}

impl PlSegment {
    pub fn image_end(&self, ctx: &BetaContext) -> BetaNumber {
        &self.y0 + &(&ctx.beta_pow(self.slope_exp) * &(&self.x1 - &self.x0))
    }
}

/// A right-continuous piecewise-linear bijection of [0, 1) in canonical
/// form: segments sorted by domain, adjacent segments with one affine law
/// merged. Structural equality on canonical forms is equality of maps and
/// hence of group elements.
#[derive(Clone, Debug)]
pub struct PlFunction {
    ctx: BetaContext,
    segments: Vec<PlSegment>,
}

impl PartialEq for PlFunction {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_context(&other.ctx) && self.segments == other.segments
    }
}
impl Eq for PlFunction {}

impl PlFunction {
    /// Canonicalize and check the bijection conditions: the domains tile
    /// [0, 1), the images tile [0, 1), and every slope is a power of beta
    /// (by representation).
    pub fn new(ctx: BetaContext, mut segments: Vec<PlSegment>) -> Result<PlFunction> {
        segments.sort_by(|a, b| a.x0.cmp(&b.x0));
        let mut cursor = ctx.zero();
        for s in &segments {
            if s.x0 != cursor {
                return Err(Error::InternalInvariantViolation(format!(
                    "domain breakpoints do not chain at {}",
                    s.x0.to_decimal(12)
                )));
            }
            if s.x1.compare(&s.x0)? != Ordering::Greater {
                return Err(Error::InternalInvariantViolation(
                    "empty or reversed segment".into(),
                ));
            }
            cursor = s.x1.clone();
        }
        if cursor != ctx.one() {
            return Err(Error::InternalInvariantViolation(
                "domain does not reach 1".into(),
            ));
        }
        let mut images: Vec<(BetaNumber, BetaNumber)> = segments
            .iter()
            .map(|s| (s.y0.clone(), s.image_end(&ctx)))
            .collect();
        images.sort_by(|a, b| a.0.cmp(&b.0));
        let mut cursor = ctx.zero();
        for (lo, hi) in &images {
            if lo != &cursor {
                return Err(Error::InternalInvariantViolation(
                    "image intervals do not tile [0, 1)".into(),
                ));
            }
            cursor = hi.clone();
        }
        if cursor != ctx.one() {
            return Err(Error::InternalInvariantViolation(
                "image does not reach 1".into(),
            ));
        }
        // Merge adjacent segments sharing one affine law.
        let mut merged: Vec<PlSegment> = Vec::with_capacity(segments.len());
        for seg in segments {
            if let Some(prev) = merged.last_mut() {
                if prev.slope_exp == seg.slope_exp && prev.image_end(&ctx) == seg.y0 {
                    prev.x1 = seg.x1;
                    continue;
                }
            }
            merged.push(seg);
        }
        Ok(PlFunction {
            ctx,
            segments: merged,
        })
    }

    pub fn identity(ctx: &BetaContext) -> PlFunction {
        PlFunction::new(
            ctx.clone(),
            vec![PlSegment {
                x0: ctx.zero(),
                x1: ctx.one(),
                y0: ctx.zero(),
                slope_exp: 0,
            }],
        )
        .expect("identity is canonical")
    }

    pub fn context(&self) -> &BetaContext {
        &self.ctx
    }

    pub fn segments(&self) -> &[PlSegment] {
        &self.segments
    }

    pub fn is_identity(&self) -> bool {
        *self == PlFunction::identity(&self.ctx)
    }

    /// Exact evaluation at a point of [0, 1).
    pub fn eval(&self, x: &BetaNumber) -> Result<BetaNumber> {
        if !self.ctx.same_context(x.context()) {
            return Err(Error::ContextMismatch);
        }
        if x.sign() < 0 || x.compare(&self.ctx.one())? != Ordering::Less {
            return Err(Error::OutOfDomain(format!(
                "{} is outside [0, 1)",
                x.to_decimal(12)
            )));
        }
        let seg = self
            .segments
            .iter()
            .find(|s| x >= &s.x0 && x < &s.x1)
            .expect("domain tiles [0, 1)");
        Ok(&seg.y0 + &(&self.ctx.beta_pow(seg.slope_exp) * &(x - &seg.x0)))
    }

    /// Canonical form of `self` after `g`.
    pub fn compose(&self, g: &PlFunction) -> Result<PlFunction> {
        if !self.ctx.same_context(&g.ctx) {
            return Err(Error::ContextMismatch);
        }
        let mut pieces = Vec::new();
        for seg in &g.segments {
            let slope = self.ctx.beta_pow(seg.slope_exp);
            let slope_inv = self.ctx.beta_pow(-seg.slope_exp);
            let img_end = seg.image_end(&self.ctx);
            let mut cuts = vec![seg.x0.clone()];
            for bp in self.segments.iter().map(|s| &s.x0) {
                if bp > &seg.y0 && bp < &img_end {
                    cuts.push(&seg.x0 + &(&slope_inv * &(bp - &seg.y0)));
                }
            }
            cuts.sort();
            cuts.push(seg.x1.clone());
            for pair in cuts.windows(2) {
                let (a, b) = (&pair[0], &pair[1]);
                if a == b {
                    continue;
                }
                let ya = &seg.y0 + &(&slope * &(a - &seg.x0));
                let outer = self
                    .segments
                    .iter()
                    .find(|s| ya >= s.x0 && ya < s.x1)
                    .expect("image point lies in the outer domain");
                let y0 = &outer.y0 + &(&self.ctx.beta_pow(outer.slope_exp) * &(&ya - &outer.x0));
                pieces.push(PlSegment {
                    x0: a.clone(),
                    x1: b.clone(),
                    y0,
                    slope_exp: seg.slope_exp + outer.slope_exp,
                });
            }
        }
        PlFunction::new(self.ctx.clone(), pieces)
    }

    /// Canonical form of the inverse bijection.
    pub fn invert(&self) -> PlFunction {
        let segments = self
            .segments
            .iter()
            .map(|s| PlSegment {
                x0: s.y0.clone(),
                x1: s.image_end(&self.ctx),
                y0: s.x0.clone(),
                slope_exp: -s.slope_exp,
            })
            .collect();
        PlFunction::new(self.ctx.clone(), segments)
            .expect("inverse of a PL bijection is a PL bijection")
    }

    pub fn to_json_string(&self) -> String {
        let num = |v: &BetaNumber| NumberJson {
            poly: v.poly_coeffs().iter().map(|c| c.to_string()).collect(),
            approx: v.to_decimal(12),
        };
        let dto = PlJson {
            segments: self
                .segments
                .iter()
                .map(|s| PlSegmentJson {
                    x0: num(&s.x0),
                    x1: num(&s.x1),
                    y0: num(&s.y0),
                    slope_exp: s.slope_exp,
                })
                .collect(),
        };
        serde_json::to_string(&dto).expect("PL function serializes")
    }
}

/// Exact-number JSON form: polynomial coefficients in beta (ascending,
/// as exact fractions) plus a display-only 12-place approximation.
#[derive(Serialize, Deserialize)]
pub(crate) struct NumberJson {
    pub poly: Vec<String>,
    pub approx: String,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PlSegmentJson {
    pub x0: NumberJson,
    pub x1: NumberJson,
    pub y0: NumberJson,
    pub slope_exp: i64,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PlJson {
    pub segments: Vec<PlSegmentJson>,
}

pub(crate) struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn shuffle<T>(items: &mut [T], rng: &mut SplitMix64) {
    for i in (1..items.len()).rev() {
        let j = rng.below(i + 1);
        items.swap(i, j);
    }
}
