//! Cheng's negative gadget extended to turned outgoing pleats (ℓ′_σ, m_σ).

use std::f64::consts::PI;

use crate::error::{GadgetError, Result};
use crate::frame::{frame_for, GadgetSpec, Side};
use crate::geometry::{intersect_lines, reflect_direction, Line2, EPS_ANG};
use crate::pattern::{ang, dist, nm, CreasePattern, Fold, PatternBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChengBranch {
    /// β_τ ≤ γ/2 + δ_L + δ_R: B′_τ = B′_τ′ on AP.
    OnRidge,
    /// β_τ > γ/2 + δ_L + δ_R: B′_τ on m_τ, B′_τ′ by reflection across PC.
    OnPleat,
}

pub fn cheng_branch(spec: &GadgetSpec, tau: Side) -> ChengBranch {
    let seam = spec.gamma() / 2.0 + spec.delta_sum();
    if spec.beta(tau).rad() <= seam.rad() + EPS_ANG {
        ChengBranch::OnRidge
    } else {
        ChengBranch::OnPleat
    }
}

/// (‖B_L B′_L‖, ‖B_R B′_R‖) from the piecewise closed form.
pub fn cheng_extension_lengths(spec: &GadgetSpec, tau: Side) -> Result<(f64, f64)> {
    crate::frame::validate(spec).into_result()?;
    let g = spec.gamma();
    let bt = spec.beta(tau);
    let ab = spec.ab_len;
    let len = |s: Side| match cheng_branch(spec, tau) {
        ChengBranch::OnRidge => (g / 2.0).sin() / (bt + g / 2.0).sin() * ab,
        ChengBranch::OnPleat => {
            let d_other = spec.delta(s.other());
            (d_other.cos() - (g + d_other).cos()) / (2.0 * (g + spec.delta_sum()).sin() * (bt - spec.delta(s)).sin())
                * ab
        }
    };
    Ok((len(Side::L), len(Side::R)))
}

/// The side with the smaller interference length; L on ties.
pub fn default_tau(spec: &GadgetSpec) -> Result<Side> {
    let (l1, l2) = cheng_extension_lengths(spec, Side::L)?;
    let (r1, r2) = cheng_extension_lengths(spec, Side::R)?;
    Ok(if r1.max(r2) < l1.max(l2) - 1e-12 { Side::R } else { Side::L })
}

pub fn build_cheng(spec: &GadgetSpec, tau: Side) -> Result<CreasePattern> {
    let f = frame_for(spec, "Cheng", false, true)?;
    let tp = tau.other();
    let branch = cheng_branch(spec, tau);
    let seam = spec.gamma() / 2.0 + spec.delta_sum();
    let mut b = PatternBuilder::new("cheng", &f);
    b.note(format!("tau = {tau}"));
    let no_hit = || GadgetError::Inconsistent("construction lines are parallel".into());

    let btp = nm("B", tp);
    let (bpt, bptp) = (nm("B'", tau), nm("B'", tp));
    let ap = Line2::through(f.a, f.p)?;
    let (b_prime_tau, b_prime_other) = match branch {
        ChengBranch::OnRidge => {
            b.branch("B' on AP", "β_τ ≤ γ/2 + δ_L + δ_R", spec.beta(tau).rad(), seam.rad());
            let (x, _, _) = intersect_lines(&f.k(tau).line(), &ap).ok_or_else(no_hit)?;
            (x, x)
        }
        ChengBranch::OnPleat => {
            b.branch("B' on m_tau", "β_τ > γ/2 + δ_L + δ_R", spec.beta(tau).rad(), seam.rad());
            let (x, _, _) = intersect_lines(&f.k(tau).line(), &f.m_line(tau)).ok_or_else(no_hit)?;
            let refl = reflect_direction(x - f.c, f.p - f.c);
            let line = Line2::new(f.c, refl).ok_or_else(no_hit)?;
            let (y, _, _) = intersect_lines(&line, &f.m_line(tp)).ok_or_else(no_hit)?;
            if x.dist(f.p) < 1e-6 * f.ab() {
                b.note("B'_tau lies within 1e-6·|AB| of P; the reflected point is ill-conditioned");
            }
            (x, y)
        }
    };
    b.point(&bpt, b_prime_tau);
    b.point(&bptp, b_prime_other);
    let q_line = Line2::new(f.b(tp), f.p - f.a).ok_or_else(no_hit)?;
    let (q, _, _) = intersect_lines(&q_line, &f.m_line(tp)).ok_or_else(no_hit)?;
    let qn = nm("Q", tp);
    b.point(&qn, q);
    for s in Side::BOTH {
        b.point(&nm("@ell'", s), f.ell_prime(s).point_at(1.0));
    }

    for s in Side::BOTH {
        b.ray(&nm("j", s), f.a, f.j(s).dir, Fold::Mountain);
        b.ray(&nm("m", s), f.p, f.m(s).dir, Fold::Mountain);
        b.ray(&nm("ell'", s), f.c, f.ell_prime(s).dir, Fold::Valley);
    }
    b.ray(&nm("k", tau), b_prime_tau, f.k(tau).dir, Fold::Valley);
    b.ray(&nm("k", tp), f.b(tp), f.k(tp).dir, Fold::Valley);
    b.seg("AP", "A", "P", Fold::Mountain);
    b.seg("CP", "C", "P", Fold::Valley);
    let bb_label = format!("{btp}{bptp}");
    b.seg(&bb_label, &btp, &bptp, Fold::Mountain);
    b.seg(&format!("C{qn}"), "C", &qn, Fold::Mountain);
    b.seg(&format!("{btp}{qn}"), &btp, &qn, Fold::Valley);
    if branch == ChengBranch::OnPleat {
        b.seg(&format!("{bpt}C"), &bpt, "C", Fold::Mountain);
        b.seg(&format!("{bptp}C"), &bptp, "C", Fold::Valley);
    }

    let (len_l, len_r) = cheng_extension_lengths(spec, tau)?;
    b.interference(&format!("extension_{tp}"), len_l.max(len_r));
    b.identity("|B_L B'_L| closed form", vec![(1.0, dist("B_L", "B'_L"))], len_l);
    b.identity("|B_R B'_R| closed form", vec![(1.0, dist("B_R", "B'_R"))], len_r);
    b.identity(
        &format!("∠A{btp}{bptp} = β_τ"),
        vec![(1.0, ang(&btp, "A", &bptp))],
        spec.beta(tau).rad(),
    );
    b.identity(
        "∠APm_R − ∠CPm_R + ∠CPm_L − ∠APm_L = 0",
        vec![
            (1.0, ang("P", "A", "@m_R")),
            (-1.0, ang("P", "C", "@m_R")),
            (1.0, ang("P", "C", "@m_L")),
            (-1.0, ang("P", "A", "@m_L")),
        ],
        0.0,
    );
    for s in Side::BOTH {
        b.identity(
            &format!("∠AB_{s}P = γ/2 + δ_L + δ_R"),
            vec![(1.0, ang(&nm("B", s), "A", "P"))],
            seam.rad(),
        );
    }
    let (lt, ltp) = (nm("@ell'", tau), nm("@ell'", tp));
    let gd = spec.gamma() + spec.delta_sum();
    b.identity(
        "∠ℓ'_L C ℓ'_R = γ + δ_L + δ_R",
        vec![(1.0, ang("C", "@ell'_L", "@ell'_R"))],
        gd.rad(),
    );
    match branch {
        ChengBranch::OnPleat => {
            b.identity(
                "∠PCB'_τ = β_τ − γ/2 − δ_L − δ_R",
                vec![(1.0, ang("C", "P", &bpt))],
                (spec.beta(tau) - seam).rad(),
            );
            b.identity(
                "∠B'_τ'CQ_τ' = π − γ/2 − β_τ",
                vec![(1.0, ang("C", &bptp, &qn))],
                PI - spec.gamma().rad() / 2.0 - spec.beta(tau).rad(),
            );
            b.identity(
                "∠PCB'_τ + ∠B'_τ'CQ_τ' + ∠ℓ'_LCℓ'_R = π",
                vec![
                    (1.0, ang("C", "P", &bpt)),
                    (1.0, ang("C", &bptp, &qn)),
                    (1.0, ang("C", "@ell'_L", "@ell'_R")),
                ],
                PI,
            );
            b.identity(
                "∠PCB'_τ' + ∠Q_τ'Cℓ'_τ' + ∠B'_τCℓ'_τ = π",
                vec![
                    (1.0, ang("C", "P", &bptp)),
                    (1.0, ang("C", &qn, &ltp)),
                    (1.0, ang("C", &bpt, &lt)),
                ],
                PI,
            );
        }
        ChengBranch::OnRidge => {
            b.identity(
                "∠PCQ_τ' = π − γ − δ_L − δ_R",
                vec![(1.0, ang("C", "P", &qn))],
                PI - gd.rad(),
            );
            b.identity(
                "∠PCQ_τ' + ∠ℓ'_LCℓ'_R = π",
                vec![(1.0, ang("C", "P", &qn)), (1.0, ang("C", "@ell'_L", "@ell'_R"))],
                PI,
            );
            b.identity(
                "∠Q_τ'Cℓ'_τ' + ∠PCℓ'_τ = π",
                vec![(1.0, ang("C", &qn, &ltp)), (1.0, ang("C", "P", &lt))],
                PI,
            );
        }
    }
    if spec.has_zero_deltas() {
        b.identity("AP and PC are collinear", vec![(1.0, ang("P", "A", "C"))], PI);
    }

    let k_tau = nm("k", tau);
    b.flat("P", &[&k_tau, &bb_label]);
    b.flat("C", &[]);
    b.flat(&qn, &[]);
    match branch {
        ChengBranch::OnPleat => {
            b.flat(&bpt, &[]);
            b.flat(&bptp, &[]);
        }
        ChengBranch::OnRidge if b_prime_tau.dist(f.p) > 1e-9 * f.ab() => b.flat(&bpt, &[]),
        ChengBranch::OnRidge => {}
    }
    Ok(b.finish())
}
