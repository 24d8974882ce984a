//! Proportional division of a third-construction negative gadget into d
//! stacked gadgets, and repetition upward from an existing one. δ = 0 only.

use serde::Serialize;

use crate::error::{GadgetError, Result};
use crate::frame::{build_frame, frame_for, validate, GadgetSpec, PleatFrame, Side};
use crate::geometry::{intersect_lines, intersect_ray_segment, reflect_direction, Angle, Line2, Point2, Ray2, EPS_ANG, EPS_LEN};
use crate::pattern::{ang, dist, nm, CreasePattern, Fold, PatternBuilder};
use crate::third::{solve_third, third_points, ThirdPoints};

/// 2·acos(1/3): the widest γ for which equal division is possible.
pub fn equal_division_gamma_bound() -> Angle {
    Angle::from_rad(2.0 * (1.0f64 / 3.0).acos())
}

/// Grid step for [`psi_avoiding_g`].
pub const PSI_GRID_STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisionPlan {
    pub d: usize,
    /// p₁..p_d from the bottom, summing to d.
    pub proportions: Vec<f64>,
    /// ψ_L⁽²⁾..ψ_L⁽ᵈ⁾.
    pub psi_list: Vec<Angle>,
    /// Prefix sums, q[0] = 0 and q[d] = d.
    pub q: Vec<f64>,
}

impl DivisionPlan {
    /// Checks the shape of the plan only; geometric feasibility is
    /// [`validate_plan`]'s job. A missing ψ list means all zeros.
    pub fn new(proportions: Vec<f64>, psi_list: Option<Vec<Angle>>) -> Result<Self> {
        let d = proportions.len();
        if d < 2 {
            return Err(GadgetError::PlanRejected(format!("need at least 2 parts, got {d}")));
        }
        if let Some(p) = proportions.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(GadgetError::PlanRejected(format!("proportions must be positive, got {p}")));
        }
        let sum: f64 = proportions.iter().sum();
        if (sum - d as f64).abs() > 1e-9 * d as f64 {
            return Err(GadgetError::PlanRejected(format!("proportions sum to {sum}, expected {d}")));
        }
        let psi_list = psi_list.unwrap_or_else(|| vec![Angle::ZERO; d - 1]);
        if psi_list.len() != d - 1 {
            return Err(GadgetError::PlanRejected(format!(
                "expected {} ψ values for levels 2..{d}, got {}",
                d - 1,
                psi_list.len()
            )));
        }
        let mut q = vec![0.0];
        for p in &proportions {
            q.push(q.last().unwrap() + p);
        }
        q[d] = d as f64;
        Ok(DivisionPlan { d, proportions, psi_list, q })
    }

    pub fn equal(d: usize) -> Result<Self> {
        DivisionPlan::new(vec![1.0; d], None)
    }

    /// Proportions normalized so they sum to their count.
    pub fn from_ratio(ratio: &[f64], psi_list: Option<Vec<Angle>>) -> Result<Self> {
        let sum: f64 = ratio.iter().sum();
        let d = ratio.len() as f64;
        DivisionPlan::new(ratio.iter().map(|p| p * d / sum).collect(), psi_list)
    }

    pub fn with_psi(mut self, psi_list: Vec<Angle>) -> Result<Self> {
        self.psi_list = psi_list;
        DivisionPlan::new(self.proportions, Some(self.psi_list))
    }

    pub fn is_equal(&self) -> bool {
        self.proportions.iter().all(|p| (p - 1.0).abs() < 1e-12)
    }

    pub fn p(&self, n: usize) -> f64 {
        self.proportions[n - 1]
    }

    /// ψ_L⁽ⁿ⁾ for n ≥ 2.
    pub fn psi(&self, n: usize) -> Angle {
        self.psi_list[n - 2]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelCheck {
    pub n: usize,
    /// (r+1)/2·p_n, which must not exceed q_n.
    pub width_need: f64,
    pub q_n: f64,
    /// Lower bound on cos ψ_L⁽ⁿ⁾.
    pub cos_psi_bound: f64,
    /// acos of the bound, when it is at most 1.
    pub psi_max: Option<Angle>,
    pub psi: Angle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanReport {
    pub r: f64,
    pub gamma_deg: f64,
    pub levels: Vec<LevelCheck>,
    /// Reported for equal division only.
    pub equal_gamma_bound_deg: Option<f64>,
    pub violations: Vec<String>,
}

impl PlanReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<PlanReport> {
        if self.is_valid() {
            Ok(self)
        } else {
            Err(GadgetError::PlanRejected(self.violations.join("; ")))
        }
    }
}

fn cos_psi_bound(r: f64, p: f64, q: f64) -> f64 {
    ((r * r - 1.0) / 2.0 * p / q + 1.0) / r
}

fn check_spec(spec: &GadgetSpec) -> Result<()> {
    validate(spec).into_result()?;
    if !spec.has_zero_deltas() {
        return Err(GadgetError::Unsupported("division requires δ_L = δ_R = 0".into()));
    }
    Ok(())
}

/// Both plan inequalities per level. Errors only when the gadget itself is
/// invalid or turned; plan problems land in `violations`.
pub fn validate_plan(spec: &GadgetSpec, plan: &DivisionPlan) -> Result<PlanReport> {
    check_spec(spec)?;
    let gamma = spec.gamma();
    let r = 1.0 / (gamma / 2.0).cos();
    let mut violations = Vec::new();
    let mut levels = Vec::new();
    for n in 2..=plan.d {
        let (p, q) = (plan.p(n), plan.q[n]);
        let width_need = (r + 1.0) / 2.0 * p;
        if width_need > q + 1e-12 {
            violations.push(format!("level {n}: (r+1)/2·p = {width_need:.6} exceeds q = {q:.6}"));
        }
        let bound = cos_psi_bound(r, p, q);
        let psi_max = (bound <= 1.0).then(|| Angle::from_rad(bound.acos()));
        let psi = plan.psi(n);
        if psi.rad().abs() >= gamma.rad() / 2.0 {
            violations.push(format!("level {n}: ψ = {psi} is outside (−γ/2, γ/2)"));
        }
        // Equality makes D⁽ⁿ⁾ reach F′⁽ⁿ⁾ and glues both pleats, so it is excluded.
        match psi_max {
            Some(m) if psi.rad().abs() < m.rad() - EPS_ANG => {}
            _ => violations.push(format!(
                "level {n}: cos ψ = {:.6} must exceed {bound:.6} (|ψ| < {})",
                psi.cos(),
                psi_max.map_or("none".to_string(), |m| m.to_string())
            )),
        }
        levels.push(LevelCheck { n, width_need, q_n: q, cos_psi_bound: bound, psi_max, psi });
    }
    let equal_gamma_bound_deg = plan.is_equal().then(|| equal_division_gamma_bound().deg());
    if let Some(b) = equal_gamma_bound_deg {
        if gamma.deg() > b + 1e-9 {
            violations.insert(0, format!("equal division needs γ ≤ 2·acos(1/3) ≈ {b:.2}°, got γ = {:.2}°", gamma.deg()));
        }
    }
    Ok(PlanReport { r, gamma_deg: gamma.deg(), levels, equal_gamma_bound_deg, violations })
}

fn phi(side: Side, gamma: Angle, psi: Angle) -> Angle {
    gamma / 2.0 - psi * side.sign()
}

/// Left side of the G-existence inequality, to compare with q_n.
pub fn g_criterion(spec: &GadgetSpec, side: Side, psi: Angle, p_n: f64) -> f64 {
    let gamma = spec.gamma();
    let f = phi(side, gamma, psi);
    (gamma / 2.0).tan() / 2.0 * (1.0 / (f / 2.0).tan() - 1.0 / spec.beta(side).tan()) * p_n
}

/// Smallest |ψ⁽ⁿ⁾| per level on a 10⁻³-rad grid for which no G⁽ⁿ⁾ appears
/// on either side; `None` if some level has no such ψ.
pub fn psi_avoiding_g(spec: &GadgetSpec, proportions: &[f64]) -> Result<Option<Vec<Angle>>> {
    check_spec(spec)?;
    let plan = DivisionPlan::new(proportions.to_vec(), None)?;
    let gamma = spec.gamma();
    let r = 1.0 / (gamma / 2.0).cos();
    let limit = gamma.rad() / 2.0;
    let steps = (limit / PSI_GRID_STEP).ceil() as i64;
    let mut out = Vec::new();
    for n in 2..=plan.d {
        let (p, q) = (plan.p(n), plan.q[n]);
        let bound = cos_psi_bound(r, p, q);
        let avoids = |psi: Angle| {
            psi.rad().abs() < limit
                && bound <= 1.0
                && psi.rad().abs() < bound.acos() - EPS_ANG
                && Side::BOTH.iter().all(|&s| {
                    let f = phi(s, gamma, psi);
                    1.0 / (f / 2.0).tan() <= 2.0 / (gamma / 2.0).tan() * q / p + 1.0 / spec.beta(s).tan()
                })
        };
        let found = (0..=steps)
            .flat_map(|k| [k, -k])
            .map(|k| Angle::from_rad(k as f64 * PSI_GRID_STEP))
            .find(|&psi| avoids(psi));
        match found {
            Some(psi) => out.push(psi),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Point and crease names for level n; in the top level A and B keep their
/// plain names.
struct Names {
    d: usize,
}

impl Names {
    fn a(&self, n: usize) -> String {
        match n {
            0 => "C".into(),
            n if n == self.d => "A".into(),
            n => format!("A^{n}"),
        }
    }

    fn b(&self, s: Side, n: usize) -> String {
        match n {
            0 => "C".into(),
            n if n == self.d => nm("B", s),
            n => format!("B_{}^{n}", s.tag()),
        }
    }

    fn lv(base: &str, s: Side, n: usize) -> String {
        format!("{base}_{}^{n}", s.tag())
    }
}

/// Creases and checks of the division of `spec` by `plan`.
pub fn build_division(spec: &GadgetSpec, plan: &DivisionPlan) -> Result<CreasePattern> {
    let f = frame_for(spec, "division", true, false)?;
    let report = validate_plan(spec, plan)?.into_result()?;
    let d = plan.d;
    let ab = f.ab();
    let tol = EPS_LEN * ab;
    let gamma = spec.gamma();
    let names = Names { d };
    let no_hit = |what: &str| GadgetError::Inconsistent(format!("{what}: construction lines do not meet"));

    let scale = |n: usize| plan.q[n] / d as f64;
    let a_at = |n: usize| f.c + (f.a - f.c) * scale(n);
    let b_at = |s: Side, n: usize| f.c + (f.b(s) - f.c) * scale(n);

    let mut b = PatternBuilder::new("division", &f);
    b.value("d", d as f64);
    b.value("r", report.r);
    for n in 1..=d {
        b.value(&format!("q_{n}"), plan.q[n]);
        b.point(&names.a(n), a_at(n));
        for s in Side::BOTH {
            b.point(&names.b(s, n), b_at(s, n));
        }
    }

    // Lowest level: the third construction on the frame scaled about C.
    let sol = solve_third(spec)?;
    let f1 = build_frame(&spec.with_ab_len(ab * scale(1)))?;
    let shift = f.c * (1.0 - scale(1));
    let raw = third_points(&f1, sol.psi_l)?;
    let low = ThirdPoints {
        d: raw.d + shift,
        e: raw.e.map(|p| p + shift),
        g: raw.g.map(|p| p + shift),
        p: raw.p.map(|p| p + shift),
    };
    if !(f1.a + shift).approx_eq(a_at(1), tol) || !(f1.c + shift).approx_eq(f.c, tol) {
        return Err(GadgetError::Inconsistent("scaled lowest frame does not sit on A⁽¹⁾ and C".into()));
    }
    b.angle_value("psi_L^1", sol.psi_l);
    b.point("D^1", low.d);
    emit_lowest(&mut b, &f, &names, &low, tol);

    let ell = |s: Side| f.ell(s).dir;
    let kdir = |s: Side| f.k(s).dir;
    let kpdir = |s: Side| reflect_direction(kdir(s), ell(s));

    for s in Side::BOTH {
        b.ray(&nm("j", s), f.a, f.j(s).dir, Fold::Mountain);
        b.ray(&nm("k", s), f.b(s), kdir(s), Fold::Valley);
        b.ray(&nm("ell", s), f.b(s), ell(s), Fold::Valley);
        b.seg_pts(&nm("AB", s), f.a, f.b(s), Fold::Valley);
        for n in 1..d {
            b.ray(&Names::lv("ell", s, n), a_at(n), ell(s), Fold::Valley);
        }
    }

    for n in 2..=d {
        let (an, an1) = (a_at(n), a_at(n - 1));
        let (na, na1) = (names.a(n), names.a(n - 1));
        let psi = plan.psi(n);
        b.angle_value(&format!("psi_L^{n}"), psi);
        let mut e = [Point2::ORIGIN; 2];
        for s in Side::BOTH {
            let (bn, bn1) = (b_at(s, n), b_at(s, n - 1));
            let m_line = Line2::new((bn + bn1) * 0.5, ell(s)).ok_or_else(|| no_hit("m"))?;
            let half = phi(s, gamma, psi) / 2.0;
            let to_e = (bn - an).rotated(-half * s.sign());
            let en = intersect_lines(&Line2::new(an, to_e).ok_or_else(|| no_hit("E"))?, &m_line)
                .ok_or_else(|| no_hit(&Names::lv("E", s, n)))?
                .0;
            e[s as usize] = en;
            let ename = Names::lv("E", s, n);
            b.point(&ename, en);
            b.ray(&Names::lv("m", s, n), en, ell(s), Fold::Mountain);
            b.seg_pts(&format!("{na}{ename}"), an, en, Fold::Mountain);
            b.seg_pts(&format!("{na1}{ename}"), an1, en, Fold::Mountain);
            b.flat(&ename, &[]);
            b.identity(
                &format!("∠{}{na}{ename} = φ/2", names.b(s, n)),
                vec![(1.0, ang(&na, &names.b(s, n), &ename))],
                half.rad(),
            );
        }
        let (el, er) = (e[0], e[1]);
        let (enl, enr) = (Names::lv("E", Side::L, n), Names::lv("E", Side::R, n));
        b.seg_pts(&format!("{enl}{enr}"), el, er, Fold::Valley);

        let fp = intersect_ray_segment(&Ray2::at_angle(an, psi), el, er).ok_or_else(|| no_hit("F′"))?;
        let fname = format!("F'^{n}");
        b.point(&fname, fp);
        b.seg_pts(&format!("{na}{fname}"), an, fp, Fold::Mountain);
        b.seg_pts(&format!("{na1}{fname}"), an1, fp, Fold::Valley);
        b.flat(&fname, &[]);
        b.identity(
            &format!("∠{}{na}{fname} = φ_L", names.b(Side::L, n)),
            vec![(1.0, ang(&na, &names.b(Side::L, n), &fname))],
            phi(Side::L, gamma, psi).rad(),
        );

        let ee = Line2::through(el, er)?;
        for s in Side::BOTH {
            let t = s.tag();
            let (bn, bn1) = (b_at(s, n), b_at(s, n - 1));
            let (nbn, nbn1) = (names.b(s, n), names.b(s, n - 1));
            let en = e[s as usize];
            let k_below = Ray2::new(bn1, kdir(s)).expect("unit k");
            let k_here = Ray2::new(bn, kpdir(s)).expect("unit k′");
            let g_below = intersect_ray_segment(&k_below, an1, en);
            let g_here = intersect_ray_segment(&k_here, an, en);
            let crit = g_criterion(spec, s, psi, plan.p(n));
            b.value(&format!("G_criterion_{t}^{n}"), crit);
            match (g_here, g_below) {
                (Some(g), Some(gp)) => {
                    let (gn, gpn) = (Names::lv("G", s, n), Names::lv("G'", s, n - 1));
                    b.branch(&format!("G_{t}^{n} exists"), "tan(γ/2)/2·(1/tan(φ/2) − 1/tan β)·p_n > q_n", crit, plan.q[n]);
                    let l1 = Line2::new(g, reflect_direction(kpdir(s), en - an)).expect("unit");
                    let l2 = Line2::new(gp, reflect_direction(kdir(s), en - an1)).expect("unit");
                    let m1 = intersect_lines(&l1, &ee).ok_or_else(|| no_hit("M"))?.0;
                    let m2 = intersect_lines(&l2, &ee).ok_or_else(|| no_hit("M"))?.0;
                    if m1.dist(m2) > tol {
                        return Err(GadgetError::Inconsistent(format!(
                            "M_{t}^{n}: reflected lines meet E_LE_R {} apart",
                            m1.dist(m2)
                        )));
                    }
                    let mn = Names::lv("M", s, n);
                    b.point(&gn, g);
                    b.point(&gpn, gp);
                    b.point(&mn, m1);
                    b.seg_pts(&format!("{nbn}{gn}"), bn, g, Fold::Mountain);
                    b.seg_pts(&format!("{gpn}{mn}"), gp, m1, Fold::Mountain);
                    b.seg_pts(&format!("{nbn1}{gpn}"), bn1, gp, Fold::Valley);
                    b.seg_pts(&format!("{gn}{mn}"), g, m1, Fold::Valley);
                    for v in [&gn, &gpn, &mn] {
                        b.flat(v, &[]);
                    }
                }
                (None, None) => {
                    b.branch(&format!("J_{t}^{n}"), "tan(γ/2)/2·(1/tan(φ/2) − 1/tan β)·p_n ≤ q_n", crit, plan.q[n]);
                    let m_line = Line2::new((bn + bn1) * 0.5, ell(s)).expect("unit");
                    let j = intersect_lines(&k_below.line(), &m_line).ok_or_else(|| no_hit("J"))?.0;
                    let j2 = intersect_lines(&k_here.line(), &m_line).ok_or_else(|| no_hit("J"))?.0;
                    if j.dist(j2) > tol {
                        return Err(GadgetError::Inconsistent(format!("J_{t}^{n}: k and k′ miss each other on m")));
                    }
                    let jn = Names::lv("J", s, n);
                    b.point(&jn, j);
                    b.seg_pts(&format!("{nbn}{jn}"), bn, j, Fold::Mountain);
                    b.seg_pts(&format!("{nbn1}{jn}"), bn1, j, Fold::Valley);
                    b.flat(&jn, &[]);
                }
                _ => {
                    return Err(GadgetError::Inconsistent(format!(
                        "G_{t}^{n} and G'_{t}^{} must exist together",
                        n - 1
                    )))
                }
            }
            b.flat(&nbn, &[]);
        }
        b.identity(
            &format!("|{na1}{na}| = p_{n}/d·|CA|"),
            vec![(1.0, dist(&na1, &na))],
            plan.p(n) / d as f64 * f.a.dist(f.c),
        );
    }
    b.identity("|CA^1| = p_1/d·|CA|", vec![(1.0, dist("C", &names.a(1)))], plan.p(1) / d as f64 * f.a.dist(f.c));
    Ok(b.finish())
}

fn emit_lowest(b: &mut PatternBuilder, f: &PleatFrame, names: &Names, low: &ThirdPoints, tol: f64) {
    let (na, n1) = (names.a(1), 1usize);
    for s in Side::BOTH {
        let (en, gn, pn) = (Names::lv("E", s, n1), Names::lv("G", s, n1), Names::lv("P", s, n1));
        let nb = names.b(s, 1);
        let (e, g, p) = (low.e(s), low.g(s), low.p(s));
        b.point(&en, e);
        b.point(&gn, g);
        b.point(&pn, p);
        b.ray(&Names::lv("m", s, 1), e, f.m(s).dir, Fold::Mountain);
        b.seg_pts(&format!("{na}{en}"), b.get(&na), e, Fold::Mountain);
        b.seg_pts(&format!("{nb}{gn}"), b.get(&nb), g, Fold::Mountain);
        if p.approx_eq(e, tol) {
            b.note(format!("{pn} = {en}: mountain {nb}{pn} and valley {nb}{en} coincide and cancel"));
        } else {
            b.seg_pts(&format!("{nb}{pn}"), b.get(&nb), p, Fold::Mountain);
            b.seg_pts(&format!("{nb}{en}"), b.get(&nb), e, Fold::Valley);
            b.flat(&pn, &[]);
        }
        b.flat(&en, &[]);
        b.flat(&gn, &[]);
    }
    let t = |base: &str, s: Side| Names::lv(base, s, 1);
    b.seg_pts(&format!("{}{}", t("E", Side::L), t("E", Side::R)), low.e[0], low.e[1], Fold::Mountain);
    b.seg_pts(&format!("{}{}", t("G", Side::L), t("G", Side::R)), low.g[0], low.g[1], Fold::Valley);
    b.seg_pts(&format!("{}{}", t("P", Side::L), t("P", Side::R)), low.p[0], low.p[1], Fold::Valley);
}

/// Extends an existing gadget upward: the given gadget is the lowest
/// level, and the whole stack has ‖AB‖ scaled by d/p₁.
pub fn build_repetition(lowest: &GadgetSpec, plan: &DivisionPlan) -> Result<CreasePattern> {
    let full = lowest.with_ab_len(lowest.ab_len * plan.d as f64 / plan.p(1));
    build_division(&full, plan)
}
