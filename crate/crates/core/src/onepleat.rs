//! Negative gadget with one simple outgoing pleat (pleat angles unchanged).

use crate::error::{GadgetError, Result};
use crate::frame::{frame_for, GadgetSpec, Side};
use crate::geometry::{intersect_lines, Angle, Point2, Ray2, EPS_ANG};
use crate::pattern::{dist, nm, CreasePattern, Fold, PatternBuilder};

/// ‖B_L B′_τ‖ = ‖B_R B′_τ‖ = sin(γ/2) / sin(β_τ + γ/2) · ‖AB‖.
pub fn onepleat_extension_length(spec: &GadgetSpec, tau: Side) -> Result<f64> {
    let g2 = spec.gamma() / 2.0;
    let s = spec.beta(tau) + g2;
    if s.rad() >= std::f64::consts::PI - EPS_ANG {
        return Err(GadgetError::Infeasible(format!("β_{tau} + γ/2 = {s} reaches 180°, extension diverges")));
    }
    Ok(g2.sin() / s.sin() * spec.ab_len)
}

/// The side with the shorter extension; L on ties.
pub fn default_tau(spec: &GadgetSpec) -> Side {
    let g2 = spec.gamma() / 2.0;
    let (l, r) = ((spec.beta_l + g2).sin(), (spec.beta_r + g2).sin());
    if r > l + EPS_ANG {
        Side::R
    } else {
        Side::L
    }
}

pub fn build_onepleat(spec: &GadgetSpec, tau: Side) -> Result<CreasePattern> {
    let f = frame_for(spec, "one-pleat", false, false)?;
    let ext = onepleat_extension_length(spec, tau)?;
    let tp = tau.other();
    let mut b = PatternBuilder::new("onepleat", &f);
    b.value("tau_is_L", if tau == Side::L { 1.0 } else { 0.0 });
    b.note(format!("tau = {tau}"));

    let b_dir = Point2::polar((f.derived.gamma_l - f.derived.gamma_r) / 2.0);
    let b_ray = Ray2::new(f.a, b_dir).expect("unit");
    let (bp, _, u) = intersect_lines(&f.k(tau).line(), &b_ray.line())
        .ok_or_else(|| GadgetError::Infeasible("k_τ is parallel to the bisector".into()))?;
    if u <= 0.0 {
        return Err(GadgetError::Infeasible("extended k_τ meets the bisector behind A".into()));
    }
    let bp_name = nm("B'", tau);
    b.point(&bp_name, bp);
    b.point("@b", f.a + b_dir);

    for s in Side::BOTH {
        b.ray(&nm("j", s), f.a, f.j(s).dir, Fold::Mountain);
    }
    b.ray("b", f.a, b_dir, Fold::Mountain);
    b.ray(&nm("k", tau), bp, f.k(tau).dir, Fold::Valley);
    b.ray(&nm("k", tp), f.b(tp), f.k(tp).dir, Fold::Valley);
    b.seg(&format!("{bp_name}{}", nm("B", tp)), &bp_name, &nm("B", tp), Fold::Mountain);
    b.ray(&nm("c", tp), f.b(tp), b_dir, Fold::Valley);
    b.seg(&format!("A{}", nm("B", tp)), "A", &nm("B", tp), Fold::Valley);
    b.note("b is creased along its full length");

    b.interference(&format!("extension_{tp}"), ext);
    for s in Side::BOTH {
        b.identity(
            &format!("|{} {bp_name}| = sin(γ/2)/sin(β_τ+γ/2)·|AB|", nm("B", s)),
            vec![(1.0, dist(&nm("B", s), &bp_name))],
            ext,
        );
    }
    b.flat(&bp_name, &[]);
    b.angle_value("bisector_dir", Angle::from_rad(b_dir.y.atan2(b_dir.x)));
    Ok(b.finish())
}
