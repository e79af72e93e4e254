//! Line-based colourings of `D_q^m`.
//!
//! A slope `a` with `a^2 + 1` a nonsquare makes every line `y = ax + b`
//! independent, and a shift `t` with `a^2 + 1 - t^2` a nonsquare makes two
//! parallel lines whose intercepts differ by `t` jointly independent. The
//! intercepts are split into additive cosets `{α + kt : 0 <= k < p}`; within a
//! coset, lines `2k` and `2k+1` share a colour and the last line `p-1` gets its
//! own, for `(p+1)/2` colours per coset and `(p^n + p^{n-1})/2` in total.

use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::graph::{Point, DEFAULT_MAX_VERTICES};

/// Smallest `a` with `χ(a^2 + 1) = -1`, or the override if it qualifies.
pub fn find_slope(ctx: &FieldCtx, override_a: Option<FieldElement>) -> Result<FieldElement> {
    let ok = |a: FieldElement| ctx.is_nonsquare(ctx.add(ctx.square(a), FieldElement::ONE));
    if let Some(a) = override_a {
        check_element(ctx, "a", a)?;
        return if ok(a) {
            Ok(a)
        } else {
            Err(Error::InvalidOverride {
                name: "a",
                code: a.code(),
                reason: "a^2 + 1 is a square",
            })
        };
    }
    ctx.elements()
        .find(|&a| ok(a))
        .ok_or(Error::NoSlopeExists(ctx.order() as u64))
}

/// Smallest nonzero `t` with `χ(a^2 + 1 - t^2) = -1`, or the override if it
/// qualifies.
pub fn find_shift(
    ctx: &FieldCtx,
    a: FieldElement,
    override_t: Option<FieldElement>,
) -> Result<FieldElement> {
    if ctx.order() <= 3 {
        return Err(Error::ConstructionUnavailable(ctx.order() as u64));
    }
    let norm = ctx.add(ctx.square(a), FieldElement::ONE);
    let ok = |t: FieldElement| !t.is_zero() && ctx.is_nonsquare(ctx.sub(norm, ctx.square(t)));
    if let Some(t) = override_t {
        check_element(ctx, "t", t)?;
        return if ok(t) {
            Ok(t)
        } else {
            Err(Error::InvalidOverride {
                name: "t",
                code: t.code(),
                reason: "t is zero or a^2 + 1 - t^2 is not a nonsquare",
            })
        };
    }
    ctx.elements()
        .find(|&t| ok(t))
        .ok_or(Error::ConstructionUnavailable(ctx.order() as u64))
}

fn check_element(ctx: &FieldCtx, name: &'static str, x: FieldElement) -> Result<()> {
    if x.code() >= ctx.order() {
        return Err(Error::InvalidOverride {
            name,
            code: x.code(),
            reason: "not an element of the field",
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharCountReport {
    pub t: u32,
    pub brute: u64,
    pub formula: i64,
}

impl CharCountReport {
    pub fn holds(&self) -> bool {
        self.brute as i64 == self.formula && self.brute >= 1
    }
}

/// `(q + (-1)^{(q-1)/2} - 2) / 4`.
pub fn aq_formula(ctx: &FieldCtx) -> i64 {
    (ctx.order() as i64 + ctx.minus_one_sign() - 2) / 4
}

/// Counts nonzero squares `i` for which `t - i` is a nonsquare.
pub fn count_aq(ctx: &FieldCtx, t: FieldElement) -> Result<CharCountReport> {
    if !ctx.is_nonsquare(t) {
        return Err(Error::NotNonsquare(t.code()));
    }
    let brute = ctx
        .elements()
        .filter(|&i| ctx.quadratic_character(i) == 1 && ctx.is_nonsquare(ctx.sub(t, i)))
        .count() as u64;
    Ok(CharCountReport {
        t: t.code(),
        brute,
        formula: aq_formula(ctx),
    })
}

fn line_point(ctx: &FieldCtx, a: FieldElement, b: FieldElement, x: FieldElement) -> Point {
    Point::from_coords(ctx, vec![x, ctx.add(ctx.mul(a, x), b)])
}

fn planar_quadrance(ctx: &FieldCtx, dx: FieldElement, dy: FieldElement) -> FieldElement {
    ctx.add(ctx.square(dx), ctx.square(dy))
}

/// A pair of distinct points on one line `y = ax + b` at quadrance 1, if any.
pub fn line_lemma_witness(ctx: &FieldCtx, a: FieldElement) -> Option<(Point, Point)> {
    for b in ctx.elements() {
        for x1 in ctx.elements() {
            for x2 in ctx.elements().filter(|&x2| x2 != x1) {
                let dx = ctx.sub(x1, x2);
                if planar_quadrance(ctx, dx, ctx.mul(a, dx)) == FieldElement::ONE {
                    return Some((line_point(ctx, a, b, x1), line_point(ctx, a, b, x2)));
                }
            }
        }
    }
    None
}

/// Exhaustively checks that no line of slope `a` contains two points at
/// quadrance 1.
pub fn verify_line_lemma(ctx: &FieldCtx, a: FieldElement) -> bool {
    line_lemma_witness(ctx, a).is_none()
}

/// A point on `y = ax + b` and one on `y = ax + b + t` at quadrance 1, if any.
pub fn cross_line_witness(
    ctx: &FieldCtx,
    a: FieldElement,
    t: FieldElement,
) -> Option<(Point, Point)> {
    for b in ctx.elements() {
        let b2 = ctx.add(b, t);
        for x in ctx.elements() {
            let ya = ctx.add(ctx.mul(a, x), b);
            for y in ctx.elements() {
                let yb = ctx.add(ctx.mul(a, y), b2);
                if planar_quadrance(ctx, ctx.sub(x, y), ctx.sub(ya, yb)) == FieldElement::ONE {
                    return Some((line_point(ctx, a, b, x), line_point(ctx, a, b2, y)));
                }
            }
        }
    }
    None
}

pub fn verify_cross_lines(ctx: &FieldCtx, a: FieldElement, t: FieldElement) -> bool {
    cross_line_witness(ctx, a, t).is_none()
}

/// Slope, shift and the coset decomposition of intercepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringPlan {
    q: u32,
    a: FieldElement,
    t: FieldElement,
    coset_reps: Vec<FieldElement>,
    /// For each intercept code: (coset index, position k within the coset).
    position: Vec<(u32, u32)>,
}

impl ColoringPlan {
    /// Validates `a` and `t` and partitions `F_q` into cosets of `⟨t⟩`, taking
    /// the smallest uncovered element as each next representative.
    pub fn new(ctx: &FieldCtx, a: FieldElement, t: FieldElement) -> Result<Self> {
        if ctx.order() <= 3 {
            return Err(Error::ConstructionUnavailable(ctx.order() as u64));
        }
        let a = find_slope(ctx, Some(a)).map_err(|e| Error::InvalidPlan(e.to_string()))?;
        let t = find_shift(ctx, a, Some(t)).map_err(|e| Error::InvalidPlan(e.to_string()))?;
        let q = ctx.order() as usize;
        let mut position = vec![(u32::MAX, u32::MAX); q];
        let mut coset_reps = Vec::new();
        for rep in ctx.elements() {
            if position[rep.code() as usize].0 != u32::MAX {
                continue;
            }
            let i = coset_reps.len() as u32;
            coset_reps.push(rep);
            let mut b = rep;
            for k in 0..ctx.p() {
                let slot = &mut position[b.code() as usize];
                if slot.0 != u32::MAX {
                    return Err(Error::InvalidPlan(format!(
                        "coset of {rep} overlaps at {b}"
                    )));
                }
                *slot = (i, k);
                b = ctx.add(b, t);
            }
            if b != rep {
                return Err(Error::InvalidPlan(format!("coset of {rep} does not close")));
            }
        }
        Ok(ColoringPlan {
            q: ctx.order(),
            a,
            t,
            coset_reps,
            position,
        })
    }

    /// Smallest-first `a` and `t`, each replaceable by a validated override.
    pub fn with_overrides(
        ctx: &FieldCtx,
        a: Option<FieldElement>,
        t: Option<FieldElement>,
    ) -> Result<Self> {
        if ctx.order() <= 3 {
            return Err(Error::ConstructionUnavailable(ctx.order() as u64));
        }
        let a = find_slope(ctx, a)?;
        let t = find_shift(ctx, a, t)?;
        Self::new(ctx, a, t)
    }

    pub fn canonical(ctx: &FieldCtx) -> Result<Self> {
        Self::with_overrides(ctx, None, None)
    }

    pub fn slope(&self) -> FieldElement {
        self.a
    }

    pub fn shift(&self) -> FieldElement {
        self.t
    }

    pub fn coset_reps(&self) -> &[FieldElement] {
        &self.coset_reps
    }

    /// Intercepts of the coset with index `i`, in the order `α_i + k t`.
    pub fn coset(&self, i: usize) -> Vec<FieldElement> {
        let mut members: Vec<(u32, FieldElement)> = self
            .position
            .iter()
            .enumerate()
            .filter(|(_, &(ci, _))| ci as usize == i)
            .map(|(b, &(_, k))| (k, FieldElement::from_code_unchecked(b as u32)))
            .collect();
        members.sort();
        members.into_iter().map(|(_, b)| b).collect()
    }

    fn colors_per_coset(&self, p: u32) -> usize {
        (p as usize).div_ceil(2)
    }

    /// Colour of the intercept `b` of a line of slope `a`.
    pub fn intercept_color(&self, ctx: &FieldCtx, b: FieldElement) -> usize {
        let (i, k) = self.position[b.code() as usize];
        i as usize * self.colors_per_coset(ctx.p()) + k as usize / 2
    }

    pub fn planar_color_count(&self, ctx: &FieldCtx) -> usize {
        self.coset_reps.len() * self.colors_per_coset(ctx.p())
    }

    fn check_ctx(&self, ctx: &FieldCtx) -> Result<()> {
        if self.q != ctx.order() {
            return Err(Error::InvalidPlan(format!(
                "plan for q={} used with q={}",
                self.q,
                ctx.order()
            )));
        }
        Ok(())
    }
}

/// `(p^n + p^{n-1}) / 2`, scaled by `q^{m-2}`.
pub fn construction_color_count(ctx: &FieldCtx, m: usize) -> u64 {
    let q = ctx.order() as u64;
    let planar = (q + q / ctx.p() as u64) / 2;
    q.pow(m.saturating_sub(2) as u32) * planar
}

pub fn build_coloring_2d(ctx: &FieldCtx, plan: &ColoringPlan) -> Result<Coloring> {
    build_coloring_md(ctx, 2, plan)
}

/// Colours `(x_1, ..., x_m)` by the prefix `(x_1, ..., x_{m-2})` together with
/// the planar colour of `(x_{m-1}, x_m)`.
pub fn build_coloring_md(ctx: &FieldCtx, m: usize, plan: &ColoringPlan) -> Result<Coloring> {
    if m < 2 {
        return Err(Error::DimensionTooSmall(m));
    }
    plan.check_ctx(ctx)?;
    let q = ctx.order() as usize;
    let size = (q as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    if size > DEFAULT_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count",
            size,
            limit: DEFAULT_MAX_VERTICES,
        });
    }
    let planar_k = plan.planar_color_count(ctx);
    let mut planar = vec![0; q * q];
    for x in ctx.elements() {
        let ax = ctx.mul(plan.a, x);
        for y in ctx.elements() {
            let b = ctx.sub(y, ax);
            planar[x.code() as usize * q + y.code() as usize] = plan.intercept_color(ctx, b);
        }
    }
    let colors = (0..size as usize)
        .map(|v| (v / (q * q)) * planar_k + planar[v % (q * q)])
        .collect();
    Ok(Coloring::new(colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_coloring;
    use crate::graph::UnitQuadranceGraph;

    fn f(q: u64) -> FieldCtx {
        FieldCtx::from_order(q).unwrap()
    }

    fn el(c: u32) -> FieldElement {
        FieldElement::from_code_unchecked(c)
    }

    #[test]
    fn slope_examples() {
        assert_eq!(find_slope(&f(7), None).unwrap(), el(2));
        assert_eq!(find_slope(&f(7), Some(el(5))).unwrap(), el(5));
        assert_eq!(find_slope(&f(5), None).unwrap(), el(1));
        assert!(matches!(
            find_slope(&f(7), Some(el(0))),
            Err(Error::InvalidOverride { name: "a", .. })
        ));
        assert!(matches!(
            find_slope(&f(7), Some(el(9))),
            Err(Error::InvalidOverride { name: "a", .. })
        ));
    }

    #[test]
    fn aq_examples() {
        let f7 = f(7);
        let r = count_aq(&f7, el(5)).unwrap();
        assert_eq!((r.brute, r.formula), (1, 1));
        assert!(r.holds());
        assert!(matches!(count_aq(&f7, el(2)), Err(Error::NotNonsquare(2))));
        assert!(matches!(count_aq(&f7, el(0)), Err(Error::NotNonsquare(0))));
    }

    #[test]
    fn shift_examples() {
        let f7 = f(7);
        assert_eq!(find_shift(&f7, el(5), None).unwrap(), el(3));
        assert_eq!(find_shift(&f7, el(2), None).unwrap(), el(3));
        assert_eq!(find_shift(&f7, el(5), Some(el(3))).unwrap(), el(3));
        assert!(matches!(
            find_shift(&f7, el(5), Some(el(1))),
            Err(Error::InvalidOverride { name: "t", .. })
        ));
        let f3 = f(3);
        let a = find_slope(&f3, None).unwrap();
        assert!(matches!(
            find_shift(&f3, a, None),
            Err(Error::ConstructionUnavailable(3))
        ));
        assert!(matches!(
            ColoringPlan::canonical(&f3),
            Err(Error::ConstructionUnavailable(3))
        ));
    }

    #[test]
    fn line_lemma_examples() {
        let f7 = f(7);
        assert!(verify_line_lemma(&f7, el(5)));
        assert!(verify_line_lemma(&f7, el(2)));
        let (a, b) = line_lemma_witness(&f7, el(0)).unwrap();
        assert_eq!(
            crate::graph::quadrance(&f7, &a, &b).unwrap(),
            FieldElement::ONE
        );
        assert!(verify_cross_lines(&f7, el(5), el(3)));
        // t = 1 fails the certificate for a = 5 and the cross-line check finds a pair
        assert!(!verify_cross_lines(&f7, el(5), el(1)));
    }

    #[test]
    fn plan_cosets_for_q7() {
        let f7 = f(7);
        let plan = ColoringPlan::new(&f7, el(5), el(3)).unwrap();
        assert_eq!(plan.coset_reps(), &[el(0)]);
        let codes: Vec<u32> = plan.coset(0).iter().map(|e| e.code()).collect();
        assert_eq!(codes, vec![0, 3, 6, 2, 5, 1, 4]);
        let classes: Vec<usize> = [0, 3, 6, 2, 5, 1, 4]
            .iter()
            .map(|&b| plan.intercept_color(&f7, el(b)))
            .collect();
        assert_eq!(classes, vec![0, 0, 1, 1, 2, 2, 3]);
        assert!(matches!(
            ColoringPlan::new(&f7, el(5), el(1)),
            Err(Error::InvalidPlan(_))
        ));
    }

    #[test]
    fn plan_cosets_partition_extension_fields() {
        for q in [9, 25, 27, 81] {
            let ctx = f(q);
            let plan = ColoringPlan::canonical(&ctx).unwrap();
            let reps = plan.coset_reps().len();
            assert_eq!(reps as u32, ctx.order() / ctx.p());
            let mut seen = vec![false; q as usize];
            for i in 0..reps {
                let coset = plan.coset(i);
                assert_eq!(coset.len(), ctx.p() as usize);
                for b in coset {
                    assert!(!std::mem::replace(&mut seen[b.code() as usize], true));
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn coloring_examples() {
        for (q, k) in [(7u64, 4usize), (9, 6), (5, 3)] {
            let ctx = f(q);
            let plan = ColoringPlan::canonical(&ctx).unwrap();
            let c = build_coloring_2d(&ctx, &plan).unwrap();
            assert_eq!(c.num_colors(), k);
            let g = UnitQuadranceGraph::build(&ctx, 2).unwrap();
            assert!(verify_coloring(&g, &c).unwrap().is_proper());
        }
    }

    #[test]
    fn coloring_md_examples() {
        for (q, k) in [(7u64, 28usize), (5, 15)] {
            let ctx = f(q);
            let plan = ColoringPlan::canonical(&ctx).unwrap();
            let c = build_coloring_md(&ctx, 3, &plan).unwrap();
            assert_eq!(c.num_colors(), k);
            assert_eq!(construction_color_count(&ctx, 3), k as u64);
            let g = UnitQuadranceGraph::build(&ctx, 3).unwrap();
            assert!(verify_coloring(&g, &c).unwrap().is_proper());
        }
        let f7 = f(7);
        let plan = ColoringPlan::canonical(&f7).unwrap();
        assert_eq!(
            build_coloring_md(&f7, 2, &plan).unwrap(),
            build_coloring_2d(&f7, &plan).unwrap()
        );
        assert!(matches!(
            build_coloring_md(&f7, 1, &plan),
            Err(Error::DimensionTooSmall(1))
        ));
        assert!(matches!(
            build_coloring_2d(&f(11), &plan),
            Err(Error::InvalidPlan(_))
        ));
    }

    /// The printed 4-colouring of F_7^2: row r, column c holds the colour of
    /// the point (x, y) = (r, c).
    const TABLE_Q7: [[usize; 7]; 7] = [
        [3, 1, 2, 3, 4, 1, 2],
        [2, 3, 4, 1, 2, 3, 1],
        [4, 1, 2, 3, 1, 2, 3],
        [2, 3, 1, 2, 3, 4, 1],
        [1, 2, 3, 4, 1, 2, 3],
        [3, 4, 1, 2, 3, 1, 2],
        [1, 2, 3, 1, 2, 3, 4],
    ];

    #[test]
    fn reproduces_printed_table_up_to_relabeling() {
        let f7 = f(7);
        let plan = ColoringPlan::new(&f7, el(5), el(3)).unwrap();
        let ours = build_coloring_2d(&f7, &plan).unwrap();
        let table = Coloring::new(TABLE_Q7.iter().flatten().map(|&c| c - 1).collect());
        assert_eq!(ours.canonical(), table.canonical());
    }
}
