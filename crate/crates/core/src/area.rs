//! The two areas the Young remainder is built from.
//!
//! `∫_{α1}^{x} φ` and `∫_{β1}^{y} ψ` are each reachable by two routes:
//! integrating the function directly, or integrating the other function of
//! the pair and subtracting from a rectangle (`x·φ(x) − α1·β1 − ∫_{β1}^{φ(x)} ψ`
//! and its mirror). Near an endpoint where one of the pair has unbounded
//! slope only one of the routes converges quickly, so the first route is
//! abandoned as soon as its convergence rate shows it cannot meet the target
//! within the panel budget, and the second route is intersected with it.

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::monotone::{ConjugatePair, MonotoneFn};
use crate::quadrature::{Inverse, Level, QuadratureConfig, Refinement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Quadrature of the integrand itself.
    Direct,
    /// Rectangle minus the area under the other function of the pair.
    Complement,
}

impl Route {
    fn other(self) -> Route {
        match self {
            Route::Direct => Route::Complement,
            Route::Complement => Route::Direct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Area {
    pub value: Enclosure,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Phi,
    Psi,
}

/// `∫_{α1}^{x} φ`, trying `first` before the other route.
pub fn phi_area(pair: &ConjugatePair, x: f64, cfg: &QuadratureConfig, first: Route) -> Result<Area> {
    pair.domain().check("a", x)?;
    area(pair, Side::Phi, x, cfg, first)
}

/// `∫_{β1}^{y} ψ`, trying `first` before the other route.
pub fn psi_area(pair: &ConjugatePair, y: f64, cfg: &QuadratureConfig, first: Route) -> Result<Area> {
    pair.codomain().check("b", y)?;
    area(pair, Side::Psi, y, cfg, first)
}

fn area(
    pair: &ConjugatePair,
    side: Side,
    limit: f64,
    cfg: &QuadratureConfig,
    first: Route,
) -> Result<Area> {
    cfg.validate()?;
    let mut runs = [
        Run::new(pair, side, first, limit, cfg)?,
        Run::new(pair, side, first.other(), limit, cfg)?,
    ];
    loop {
        let Some(next) = choose(&runs, cfg) else {
            break;
        };
        runs[next].advance()?;
        if let Some(area) = combined(&runs)? {
            if area.value.width() <= cfg.target_width {
                return Ok(area);
            }
        }
    }
    let area = combined(&runs)?.expect("every route has at least one level");
    Err(Error::BudgetExceeded {
        best: area.value,
        panels: area.panels,
    })
}

/// Range of `∫_{x.lo}^{t} (y − φ)` for `t` in `x`. Exactly zero when `x` is
/// a point.
pub(crate) fn drift(phi: &MonotoneFn, y: f64, x: Enclosure) -> Enclosure {
    let d = x.width();
    if d == 0.0 {
        return Enclosure::point(0.0);
    }
    Enclosure::hull_of(&[0.0, d * (y - phi.value(x.hi())), d * (y - phi.value(x.lo()))])
        .inflate(0.0)
}

/// Levels each route runs before its convergence rate is trusted.
const MIN_LEVELS: usize = 3;

/// Picks the route to refine next: the preferred route alone until it has
/// a measured rate, then the other up to the same depth, then whichever
/// predicts the smaller final panel count.
fn choose(runs: &[Run<'_>; 2], cfg: &QuadratureConfig) -> Option<usize> {
    let open = |i: usize| !runs[i].done;
    for i in 0..2 {
        if open(i) && runs[i].levels < MIN_LEVELS {
            return Some(i);
        }
    }
    let cost = |i: usize| {
        if open(i) {
            runs[i].predicted_panels(cfg)
        } else {
            f64::INFINITY
        }
    };
    match (open(0), open(1)) {
        (false, false) => None,
        (true, false) => Some(0),
        (false, true) => Some(1),
        (true, true) => {
            let (c0, c1) = (cost(0), cost(1));
            if c0.is_infinite() && c1.is_infinite() {
                // neither converges measurably: keep the two in step
                Some(if runs[1].panels < runs[0].panels { 1 } else { 0 })
            } else {
                Some(if c1 < c0 { 1 } else { 0 })
            }
        }
    }
}

/// Intersection of the latest enclosures of the routes that have produced
/// one.
fn combined(runs: &[Run<'_>; 2]) -> Result<Option<Area>> {
    let mut acc: Option<Area> = None;
    for run in runs {
        let Some(value) = run.value else { continue };
        acc = Some(match acc {
            None => Area {
                value,
                panels: run.panels,
            },
            Some(prev) => Area {
                value: prev.value.intersect(&value).ok_or(Error::Inconsistent {
                    what: "area routes",
                    first: prev.value,
                    second: value,
                })?,
                panels: prev.panels.max(run.panels),
            },
        });
    }
    Ok(acc)
}

type Levels<'a> = Box<dyn Iterator<Item = Result<Level>> + 'a>;

/// One route, refined a level at a time.
struct Run<'a> {
    levels_iter: Levels<'a>,
    /// Maps an inner integral enclosure to the area enclosure.
    finish: Box<dyn Fn(Enclosure) -> Enclosure + 'a>,
    value: Option<Enclosure>,
    widths: (f64, f64),
    panels: usize,
    levels: usize,
    done: bool,
}

impl<'a> Run<'a> {
    fn new(
        pair: &'a ConjugatePair,
        side: Side,
        route: Route,
        limit: f64,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        let alpha1 = pair.domain().lo();
        let beta1 = pair.codomain().lo();
        let corner = Enclosure::point(alpha1) * beta1;
        let (levels_iter, finish): (Levels<'a>, Box<dyn Fn(Enclosure) -> Enclosure>) =
            match (side, route) {
                (Side::Phi, Route::Direct) => (
                    Box::new(Refinement::new(pair.phi(), alpha1, limit, cfg)?),
                    Box::new(|e| e),
                ),
                (Side::Psi, Route::Direct) => (
                    Box::new(Refinement::new(Inverse::new(pair), beta1, limit, cfg)?),
                    Box::new(|e| e),
                ),
                (Side::Phi, Route::Complement) => {
                    // x·φ(x) − α1β1 − ∫_{β1}^{φ(x)} ψ
                    let y = pair.phi().eval(limit)?;
                    let rect = Enclosure::point(limit) * y - corner;
                    (
                        Box::new(Refinement::new(Inverse::new(pair), beta1, y, cfg)?),
                        Box::new(move |inner| rect - inner),
                    )
                }
                (Side::Psi, Route::Complement) => {
                    // y·ψ(y) − α1β1 − ∫_{α1}^{ψ(y)} φ, with ψ(y) only known to lie in
                    // [xl, xh]. Over x in [xl, xh] the expression moves by
                    // ∫_{xl}^{x} (y − φ), whose integrand lies in
                    // [y − φ(xh), y − φ(xl)].
                    let y = limit;
                    let x = pair.invert(y)?;
                    let rect = Enclosure::point(y) * x.lo() - corner + drift(pair.phi(), y, x);
                    (
                        Box::new(Refinement::new(pair.phi(), alpha1, x.lo(), cfg)?),
                        Box::new(move |inner| rect - inner),
                    )
                }
            };
        Ok(Self {
            levels_iter,
            finish,
            value: None,
            widths: (f64::NAN, f64::NAN),
            panels: 0,
            levels: 0,
            done: false,
        })
    }

    fn advance(&mut self) -> Result<()> {
        match self.levels_iter.next() {
            None => self.done = true,
            Some(level) => {
                let level = level?;
                let value = (self.finish)(level.enclosure);
                self.value = Some(match self.value {
                    Some(prev) => prev.intersect(&value).unwrap_or(value),
                    None => value,
                });
                self.widths = (self.widths.1, level.enclosure.width());
                self.panels = level.panels;
                self.levels += 1;
            }
        }
        Ok(())
    }

    fn predicted_panels(&self, cfg: &QuadratureConfig) -> f64 {
        predicted_panels(self.widths.0, self.widths.1, self.panels, cfg)
    }
}

/// Extrapolates the observed width ratio to the panel count at which the
/// target would be met; infinite when the rate is too slow to trust or the
/// count exceeds the budget.
fn predicted_panels(prev_width: f64, width: f64, panels: usize, cfg: &QuadratureConfig) -> f64 {
    if width <= cfg.target_width {
        return panels as f64;
    }
    let ratio = prev_width / width;
    if !(ratio > 1.2) {
        return f64::INFINITY;
    }
    let doublings = ((width / cfg.target_width).ln() / ratio.ln()).ceil();
    let n = panels as f64 * doublings.exp2();
    if n <= cfg.max_panels as f64 {
        n
    } else {
        f64::INFINITY
    }
}
