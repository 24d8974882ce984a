//! Negative gadget obtained by rotating the P′ crease about C by θ/2.
//! Needs both β_σ on the same side of a right angle.

use std::f64::consts::PI;

use crate::error::{GadgetError, Result};
use crate::frame::{frame_for, GadgetSpec, PleatFrame, Side};
use crate::geometry::{bisector_ray, intersect_lines, Angle, Line2, Point2, EPS_ANG};
use crate::pattern::{ang, dist, nm, CreasePattern, PatternBuilder};
use crate::third::{emit_third_creases, ThirdPoints};

/// Tolerance between the geometric θ and the arctangent form.
pub const THETA_CROSS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaData {
    pub theta: Angle,
    /// Both β are right angles: B′ = A and θ may be chosen.
    pub free: bool,
    pub theta_l: Angle,
    pub theta_r: Angle,
    pub b_prime: Point2,
    pub b_prime_0: Point2,
    pub feasible: bool,
}

impl ThetaData {
    pub fn admits(&self, theta: Angle) -> bool {
        theta.rad() > -self.theta_l.rad() + EPS_ANG && theta.rad() < self.theta_r.rad() - EPS_ANG
    }
}

/// atan(sin(y−x) / (2 cos x cos y + sin(x+y)/tan(γ/2))), the tangent quotient
/// cleared of cosines so right angles need no special case.
fn tan_quotient_atan(x: Angle, y: Angle, half_gamma: Angle) -> f64 {
    let num = (y - x).sin();
    let den = 2.0 * x.cos() * y.cos() + (x + y).sin() / half_gamma.tan();
    if den.abs() < 1e-15 {
        return num.signum() * PI / 2.0;
    }
    (num / den).atan()
}

/// Closed form of θ from β and δ alone.
pub fn theta_formula(spec: &GadgetSpec) -> f64 {
    let h = spec.gamma() / 2.0;
    tan_quotient_atan(spec.beta_l, spec.beta_r, h) - tan_quotient_atan(spec.delta_l, spec.delta_r, h)
}

fn side_of_right(b: Angle) -> i8 {
    if (b.rad() - PI / 2.0).abs() <= EPS_ANG {
        0
    } else if b.rad() < PI / 2.0 {
        -1
    } else {
        1
    }
}

pub fn compute_theta(spec: &GadgetSpec) -> Result<ThetaData> {
    let f = frame_for(spec, "second", false, true)?;
    theta_on_frame(spec, &f)
}

fn theta_on_frame(spec: &GadgetSpec, f: &PleatFrame) -> Result<ThetaData> {
    let (sl, sr) = (side_of_right(spec.beta_l), side_of_right(spec.beta_r));
    if sl * sr < 0 {
        return Err(GadgetError::Unsupported(format!(
            "β_L = {} and β_R = {} lie on opposite sides of 90°",
            spec.beta_l, spec.beta_r
        )));
    }
    let d = &f.derived;
    let theta_l = Angle::from_rad(PI) - (d.gamma_r + spec.delta_r) * 2.0;
    let theta_r = Angle::from_rad(PI) - (d.gamma_l + spec.delta_l) * 2.0;

    if sl == 0 && sr == 0 {
        let mut t = ThetaData {
            theta: Angle::ZERO,
            free: true,
            theta_l,
            theta_r,
            b_prime: f.a,
            b_prime_0: f.a,
            feasible: false,
        };
        t.feasible = theta_r.rad() + theta_l.rad() > 2.0 * EPS_ANG;
        return Ok(t);
    }

    let perp = |s: Side| Line2::new(f.b(s), f.k(s).dir.perp()).expect("unit direction");
    let (bp, _, _) = intersect_lines(&perp(Side::L), &perp(Side::R))
        .ok_or_else(|| GadgetError::Inconsistent("perpendiculars to k_L and k_R are parallel".into()))?;
    let bp0 = if sl >= 0 && sr >= 0 { bp } else { f.a * 2.0 - bp };
    let v = bp0 - f.a;
    let theta = Angle::from_rad(-v.y.atan2(v.x));
    let closed = theta_formula(spec);
    if (closed - theta.rad()).abs() > THETA_CROSS_TOL {
        return Err(GadgetError::Inconsistent(format!(
            "geometric θ = {:.12} rad disagrees with the closed form {closed:.12} rad",
            theta.rad()
        )));
    }
    let mut t = ThetaData { theta, free: false, theta_l, theta_r, b_prime: bp, b_prime_0: bp0, feasible: false };
    t.feasible = t.admits(theta);
    Ok(t)
}

/// E, G and P of the construction; reuses the third-construction point set with D on AC.
pub fn second_points(f: &PleatFrame, theta: Angle) -> Result<ThirdPoints> {
    let no_hit = || GadgetError::Inconsistent("construction lines are parallel".into());
    let d = f.a + Point2::new(f.ab(), 0.0);
    let across_d = Line2::new(d, Point2::new(0.0, 1.0)).expect("unit");
    // The screen frame is the mirror of the figures, so the turn is clockwise here.
    let across_c = Line2::new(f.c, Point2::polar(Angle::RIGHT - theta / 2.0)).expect("unit");
    let mut e = [Point2::ORIGIN; 2];
    let mut g = [Point2::ORIGIN; 2];
    let mut p = [Point2::ORIGIN; 2];
    for s in Side::BOTH {
        let i = s as usize;
        let bis = bisector_ray(f.a, f.b(s), f.c)?;
        e[i] = intersect_lines(&bis.line(), &f.m_line(s)).ok_or_else(no_hit)?.0;
        g[i] = intersect_lines(&across_d, &Line2::through(f.a, e[i])?).ok_or_else(no_hit)?.0;
        p[i] = intersect_lines(&across_c, &f.m_line(s)).ok_or_else(no_hit)?.0;
    }
    Ok(ThirdPoints { d, e, g, p })
}

pub fn build_second(spec: &GadgetSpec, theta_choice: Option<Angle>) -> Result<CreasePattern> {
    let f = frame_for(spec, "second", false, true)?;
    let td = theta_on_frame(spec, &f)?;
    let theta = match (td.free, theta_choice) {
        (true, Some(t)) => t,
        (true, None) => Angle::ZERO,
        (false, Some(t)) if !t.approx_eq(td.theta) => {
            return Err(GadgetError::Domain(format!(
                "θ is determined as {} here and cannot be chosen",
                td.theta
            )))
        }
        (false, _) => td.theta,
    };
    if !td.admits(theta) {
        return Err(GadgetError::Infeasible(format!(
            "θ = {theta} outside (−θ_L, θ_R) = ({}, {})",
            -td.theta_l,
            td.theta_r
        )));
    }
    let pts = second_points(&f, theta)?;
    for s in Side::BOTH {
        // P must sit on the redefined m ray, past E.
        if (pts.p(s) - pts.e(s)).dot(f.m(s).dir) < -1e-9 * f.ab() {
            return Err(GadgetError::Infeasible(format!("P_{s} falls before E_{s} on m_{s}")));
        }
    }

    let mut b = PatternBuilder::new("second", &f);
    b.angle_value("theta", theta);
    b.angle_value("theta_L", td.theta_l);
    b.angle_value("theta_R", td.theta_r);
    b.value("theta_free", if td.free { 1.0 } else { 0.0 });
    if td.free {
        b.note("both β are right angles: θ chosen freely");
    }
    let eps = theta / 2.0;
    let d = &f.derived;
    b.branch("ε ≥ −θ_L,2", "−(γ_L/2 + δ_L) ≤ θ/2", eps.rad(), -(d.gamma_l / 2.0 + spec.delta_l).rad());
    b.branch("ε ≤ θ_R,2", "θ/2 ≤ γ_R/2 + δ_R", (d.gamma_r / 2.0 + spec.delta_r).rad(), eps.rad());
    b.branch("2ε ≥ −θ_L,3", "π/2 − β_L − γ_L ≤ θ", theta.rad(), (Angle::RIGHT - spec.beta_l - d.gamma_l).rad());
    b.branch("2ε ≤ θ_R,3", "θ ≤ β_R + γ_R − π/2", (spec.beta_r + d.gamma_r - Angle::RIGHT).rad(), theta.rad());

    b.point("D", pts.d);
    b.point("B'", td.b_prime);
    for s in Side::BOTH {
        b.point(&nm("E", s), pts.e(s));
        b.point(&nm("G", s), pts.g(s));
        b.point(&nm("P", s), pts.p(s));
    }
    emit_third_creases(&mut b, &f, &pts);

    for s in Side::BOTH {
        let (bn, en, gn, pn) = (nm("B", s), nm("E", s), nm("G", s), nm("P", s));
        let (k, l) = (nm("@k", s), nm("@ell", s));
        let kdg = (spec.beta(s) + d.gamma_side(s) - Angle::RIGHT).rad();
        b.identity_gt(
            &format!("∠k{bn}ℓ > ∠{pn}{bn}ℓ"),
            vec![(1.0, ang(&bn, &k, &l)), (-1.0, ang(&bn, &pn, &l))],
            0.0,
        );
        b.identity(
            &format!("∠k{bn}ℓ − ∠{pn}{bn}ℓ = β + γ_{s} − π/2 ± θ/2"),
            vec![(1.0, ang(&bn, &k, &l)), (-1.0, ang(&bn, &pn, &l))],
            kdg + s.sign() * eps.rad(),
        );
        b.identity(
            &format!("∠k D {gn} = β + γ_{s} − π/2 ± θ"),
            vec![
                (1.0, ang(&bn, &k, &l)),
                (-1.0, ang(&bn, &pn, &l)),
                (1.0, ang(&bn, &en, &pn)),
                (-1.0, ang(&bn, &en, &gn)),
            ],
            kdg + s.sign() * theta.rad(),
        );
        let k_len = f.ab() * (d.gamma_side(s) / 2.0).tan();
        b.interference(&format!("DG_{s}"), k_len);
        b.identity(&format!("|D{gn}| = |AB| tan(γ_{s}/2)"), vec![(1.0, dist("D", &gn))], k_len);
        b.identity(&format!("|D{gn}| = |{bn}{gn}|"), vec![(1.0, dist("D", &gn)), (-1.0, dist(&bn, &gn))], 0.0);
    }
    for s in Side::BOTH {
        b.flat(&nm("E", s), &[]);
        b.flat(&nm("G", s), &[]);
        b.flat(&nm("P", s), &[]);
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Fold;

    fn deg(x: f64) -> Angle {
        Angle::from_deg(x)
    }

    #[test]
    fn cube_is_free_with_symmetric_p() {
        let t = compute_theta(&GadgetSpec::cube()).unwrap();
        assert!(t.free && t.feasible);
        assert!(t.theta_l.approx_eq(deg(90.0)) && t.theta_r.approx_eq(deg(90.0)));
        let cp = build_second(&GadgetSpec::cube(), None).unwrap();
        let s2 = 2f64.sqrt();
        assert!(cp.point("P_L").unwrap().approx_eq(Point2::new(s2, s2 / 2.0), 1e-12));
        assert!(cp.point("P_R").unwrap().approx_eq(Point2::new(s2, -s2 / 2.0), 1e-12));
        let g = (PI / 8.0).tan();
        assert!((cp.point("D").unwrap().dist(cp.point("G_L").unwrap()) - g).abs() < 1e-12);
    }

    #[test]
    fn right_angle_on_left_gives_minus_gamma_l() {
        let s = GadgetSpec::from_degrees(120.0, 90.0, 60.0, 0.0, 0.0);
        let t = compute_theta(&s).unwrap();
        assert!(!t.free);
        assert!((t.theta.deg() + 45.0).abs() < 1e-9, "{}", t.theta);
        assert!((theta_formula(&s).to_degrees() + 45.0).abs() < 1e-9);
    }

    #[test]
    fn symmetric_acute_has_zero_theta() {
        let t = compute_theta(&GadgetSpec::from_degrees(100.0, 70.0, 70.0, 0.0, 0.0)).unwrap();
        assert!(t.theta.rad().abs() < 1e-12);
    }

    #[test]
    fn mixed_betas_are_unsupported() {
        let s = GadgetSpec::from_degrees(120.0, 80.0, 100.0, 0.0, 0.0);
        assert!(matches!(compute_theta(&s), Err(GadgetError::Unsupported(_))));
        assert!(matches!(build_second(&s, None), Err(GadgetError::Unsupported(_))));
    }

    #[test]
    fn identities_and_foldability_hold() {
        for s in [
            GadgetSpec::from_degrees(120.0, 90.0, 60.0, 0.0, 0.0),
            GadgetSpec::from_degrees(110.0, 100.0, 120.0, 0.0, 0.0),
            GadgetSpec::from_degrees(100.0, 70.0, 80.0, 4.0, 7.0),
            GadgetSpec::from_degrees(130.0, 95.0, 110.0, 6.0, 2.0),
        ] {
            let cp = build_second(&s, None).unwrap();
            for c in cp.assert_identities().unwrap() {
                assert!(c.holds(), "{s:?}: {c:?}");
            }
            for (v, k) in cp.declared_flat_residuals() {
                assert!(k.unwrap().residual.rad() < 1e-9, "{v} for {s:?}");
            }
            for br in &cp.report.branches {
                assert!(br.lhs >= br.rhs - 1e-12, "{br:?}");
            }
            assert!(cp.check_planarity().is_empty());
        }
    }

    #[test]
    fn closed_form_agrees_with_turned_pleats() {
        let s = GadgetSpec::from_degrees(100.0, 70.0, 80.0, 4.0, 7.0);
        let t = compute_theta(&s).unwrap();
        assert!((t.theta.rad() - theta_formula(&s)).abs() < 1e-12);
    }

    #[test]
    fn symmetric_spec_mirrors() {
        let cp = build_second(&GadgetSpec::from_degrees(110.0, 100.0, 100.0, 5.0, 5.0), None).unwrap();
        for base in ["E", "G", "P"] {
            let l = cp.point(&format!("{base}_L")).unwrap();
            let r = cp.point(&format!("{base}_R")).unwrap();
            assert!(l.approx_eq(Point2::new(r.x, -r.y), 1e-12), "{base}");
        }
        assert_eq!(cp.count_fold(Fold::Mountain), 2 * 5 + 1);
    }

    #[test]
    fn theta_is_fixed_outside_free_case() {
        let s = GadgetSpec::from_degrees(120.0, 90.0, 60.0, 0.0, 0.0);
        assert!(matches!(build_second(&s, Some(deg(5.0))), Err(GadgetError::Domain(_))));
        assert!(build_second(&GadgetSpec::cube(), Some(deg(10.0))).is_ok());
        assert!(matches!(build_second(&GadgetSpec::cube(), Some(deg(95.0))), Err(GadgetError::Infeasible(_))));
    }
}
