//! Collisions between neighboring third-construction gadgets that share a
//! side face A₁A₂B₂B₁, with B₁ on the left.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::frame::{derive_angles, GadgetSpec};
use crate::geometry::Angle;
use crate::third::{interference_from_solution, solve_third};

/// A gadget solved by the third construction, as seen by its neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolvedGadget {
    pub spec: GadgetSpec,
    pub rho_l: Angle,
    pub gamma_l: Angle,
    pub gamma_r: Angle,
    pub k_l: f64,
    pub k_r: f64,
}

impl SolvedGadget {
    pub fn solve(spec: &GadgetSpec) -> Result<Self> {
        let sol = solve_third(spec)?;
        let d = derive_angles(spec)?;
        let (k_l, k_r) = interference_from_solution(spec, &d, &sol);
        Ok(SolvedGadget { spec: *spec, rho_l: sol.rho_l, gamma_l: d.gamma_l, gamma_r: d.gamma_r, k_l, k_r })
    }

    /// The same gadget seen from behind the page: sides swap, ρ_L changes sign.
    pub fn mirrored(&self) -> Self {
        SolvedGadget {
            spec: self.spec.mirrored(),
            rho_l: -self.rho_l,
            gamma_l: self.gamma_r,
            gamma_r: self.gamma_l,
            k_l: self.k_r,
            k_r: self.k_l,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdjacencyCase {
    pub left: SolvedGadget,
    pub right: SolvedGadget,
    /// ‖B₁B₂‖.
    pub shared_len: f64,
}

impl AdjacencyCase {
    pub fn new(left: &GadgetSpec, right: &GadgetSpec, shared_len: f64) -> Result<Self> {
        Ok(AdjacencyCase { left: SolvedGadget::solve(left)?, right: SolvedGadget::solve(right)?, shared_len })
    }

    /// Right gadget mirrored onto the left and vice versa.
    pub fn swapped(&self) -> Self {
        AdjacencyCase { left: self.right.mirrored(), right: self.left.mirrored(), shared_len: self.shared_len }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterferenceReport {
    pub theta_1r_deg: f64,
    pub theta_2l_deg: f64,
    /// K_neg,R of the left gadget.
    pub k_1r: f64,
    /// K_neg,L of the right gadget.
    pub k_2l: f64,
    pub min_shared_len: f64,
    pub shared_len: f64,
    pub ok: bool,
    /// ‖B₁B₂‖ when A₁ = A₂; only exists when β_1,R + β_2,L ≥ π.
    pub apex_floor: Option<f64>,
}

/// Angles ∠B₂B₁G_1,R and ∠B₁B₂G_2,L of the extended flap bases.
pub fn flap_angles(case: &AdjacencyCase) -> (Angle, Angle) {
    let (l, r) = (&case.left, &case.right);
    let t1 = l.spec.beta_r + l.gamma_r - l.rho_l - Angle::RIGHT;
    let t2 = r.spec.beta_l + r.gamma_l + r.rho_l - Angle::RIGHT;
    (t1, t2)
}

pub fn min_shared_length(case: &AdjacencyCase) -> f64 {
    let (t1, t2) = flap_angles(case);
    // Bases that lean away from each other never meet.
    if t1.rad() <= 0.0 || t2.rad() <= 0.0 || t1.rad() + t2.rad() >= PI {
        return 0.0;
    }
    let reach = (case.left.k_r * t1.sin()).min(case.right.k_l * t2.sin());
    reach * (1.0 / t1.tan() + 1.0 / t2.tan())
}

/// ‖B₁B₂‖ forced by letting the two apexes coincide, from the triangle with
/// angles π − β_1,R and π − β_2,L at B₁ and B₂.
pub fn apex_floor(case: &AdjacencyCase) -> Option<f64> {
    let (b1, b2) = (case.left.spec.beta_r, case.right.spec.beta_l);
    let s = b1 + b2;
    if s.rad() < PI {
        return None;
    }
    Some((-case.left.spec.ab_len * s.sin() / b2.sin()).max(0.0))
}

pub fn analyze(case: &AdjacencyCase) -> InterferenceReport {
    let (t1, t2) = flap_angles(case);
    let k_min = min_shared_length(case);
    InterferenceReport {
        theta_1r_deg: t1.deg(),
        theta_2l_deg: t2.deg(),
        k_1r: case.left.k_r,
        k_2l: case.right.k_l,
        min_shared_len: k_min,
        shared_len: case.shared_len,
        ok: case.shared_len >= k_min,
        apex_floor: apex_floor(case),
    }
}

/// One collision condition of the prism scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrismBullet {
    pub description: String,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrismReport {
    pub bullets: Vec<PrismBullet>,
    /// Largest threshold: the prism is interference-free iff ‖A₁B₂‖ is at least this.
    pub binding: f64,
}

impl PrismReport {
    pub fn interference_free(&self, a1b2: f64) -> bool {
        a1b2 >= self.binding - 1e-12
    }
}

/// Triangular prism with a positive gadget on the left and a third-construction
/// negative on the right: α = 60°, all β = 90°, δ = 0, ψ_L = 0, ‖A₁B₁‖ = 1.
pub fn prism_example_report() -> Result<PrismReport> {
    let spec = GadgetSpec::from_degrees(60.0, 90.0, 90.0, 0.0, 0.0);
    let d = derive_angles(&spec)?;
    // Kite A B G D of the positive gadget with ψ = 0: ‖BG‖ = ‖AB‖ tan(∠BAD/2).
    let positive_kite = spec.ab_len * (d.gamma_r / 2.0).tan();
    let negative = SolvedGadget::solve(&spec)?;
    let bullets = vec![
        PrismBullet { description: "positive kite A₁B_1,R G_1,R D₁ reaches A₂".into(), threshold: positive_kite },
        PrismBullet { description: "negative kite A₂B_2,L G_2,L D₂ reaches j_1,L".into(), threshold: negative.k_l },
        PrismBullet {
            description: "j_1,L reflected across ℓ_2,L meets the negative kite".into(),
            threshold: negative.k_l,
        },
        PrismBullet {
            description: "j_2,R reflected across ℓ_1,R meets the negative kite".into(),
            threshold: positive_kite,
        },
    ];
    let binding = bullets.iter().map(|b| b.threshold).fold(0.0, f64::max);
    Ok(PrismReport { bullets, binding })
}
