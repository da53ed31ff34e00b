//! Reference model configurations used across the workspace tests and the
//! command-line fixtures.

use crate::cone::{cone_foundation_params, ConeEmbedmentForm, ConeFoundationParams};
use crate::system::{
    build_soil_structure_model, DampingSpec, FoundationModel, FoundationProps, Story, SystemModel,
};

/// Single-story structure on an embedded cylindrical foundation.
///
/// The structure is tuned to a 0.4 s fixed-base period with 2 % damping; the
/// halfspace shear wave velocity is chosen so the fixed-base frequency maps
/// to a dimensionless frequency `omega_n * h / vs` of 4.
#[derive(Debug, Clone, Copy)]
pub struct SdofCase {
    pub cone: ConeFoundationParams,
    pub omega_n: f64,
    pub xi: f64,
    pub ks: f64,
    pub cs: f64,
    pub ms: f64,
    pub mf: f64,
    pub h: f64,
    pub e: f64,
    pub r: f64,
    pub vs: f64,
    pub story_inertia: f64,
    pub foundation_inertia: f64,
}

pub fn sdof_case() -> SdofCase {
    let t_n = 0.4;
    let xi = 0.02;
    let ms = 1.0;
    let nu = 0.25;
    let r = 8.0;
    let h = 3.0 * r;
    let e = r;
    let mf = 0.5 * ms;
    let omega_n = 2.0 * std::f64::consts::PI / t_n;
    let vs = omega_n * h / 4.0;
    // mass ratio ms / (rho h r^2) = 0.5
    let rho = ms / (0.5 * h * r * r);
    let cone = cone_foundation_params(r, e, rho, nu, vs, ConeEmbedmentForm::ReducedRocking)
        .expect("reference cone parameters are valid");
    SdofCase {
        cone,
        omega_n,
        xi,
        ks: ms * omega_n * omega_n,
        cs: 2.0 * ms * omega_n * xi,
        ms,
        mf,
        h,
        e,
        r,
        vs,
        story_inertia: 0.25 * ms * r * r,
        foundation_inertia: 0.25 * mf * r * r,
    }
}

impl SdofCase {
    pub fn story(&self, yield_disp: Option<f64>) -> Story {
        Story {
            mass: self.ms,
            height: self.h,
            stiffness: self.ks,
            rotary_inertia: self.story_inertia,
            yield_disp,
            hardening: 0.0,
        }
    }

    pub fn foundation(&self) -> FoundationProps {
        FoundationProps {
            mass: self.mf,
            rotary_inertia: self.foundation_inertia,
            eccentricity: self.e,
        }
    }

    fn damping(&self) -> DampingSpec {
        DampingSpec::PerStory(vec![self.cs])
    }

    fn build(&self, yield_disp: Option<f64>, support: FoundationModel) -> SystemModel {
        build_soil_structure_model(
            &[self.story(yield_disp)],
            &self.foundation(),
            &support,
            &self.damping(),
        )
        .expect("reference model is valid")
    }

    /// Four-DOF model with the internal rocking dashpot cell.
    pub fn physical_model(&self) -> SystemModel {
        self.build(None, FoundationModel::physical_from_cone(&self.cone))
    }

    /// Physical model with an elastic-perfectly-plastic story.
    pub fn physical_model_epp(&self, yield_disp: f64) -> SystemModel {
        self.build(
            Some(yield_disp),
            FoundationModel::physical_from_cone(&self.cone),
        )
    }

    /// Three-DOF model leaving the rocking direction to an external
    /// impedance or reference substructure.
    pub fn base_model(&self) -> SystemModel {
        self.build(None, FoundationModel::sway_only_from_cone(&self.cone))
    }

    pub fn base_model_epp(&self, yield_disp: f64) -> SystemModel {
        self.build(
            Some(yield_disp),
            FoundationModel::sway_only_from_cone(&self.cone),
        )
    }

    /// Three-DOF model with the rocking impedance frozen to the constants
    /// `(kr, cr)`.
    pub fn approximate_model(&self, kr: f64, cr: f64) -> SystemModel {
        self.build(
            None,
            FoundationModel::SwayRocking {
                k0h: self.cone.k0h,
                c0h: self.cone.c0h,
                kr,
                cr,
                fk: self.cone.fk,
                fc: self.cone.fc,
            },
        )
    }

    /// Fixed-base single story, the rigid-soil limit.
    pub fn fixed_base_model(&self) -> SystemModel {
        self.build(None, FoundationModel::Fixed)
    }
}

/// Five-story building on an embedded foundation, with yielding stories and
/// Rayleigh superstructure damping.
#[derive(Debug, Clone, Copy)]
pub struct BuildingCase {
    pub n_stories: usize,
    pub story_mass: f64,
    pub story_stiffness: f64,
    pub story_rotary_inertia: f64,
    pub story_height: f64,
    pub yield_drifts: [f64; 5],
    pub foundation_mass: f64,
    pub foundation_inertia: f64,
    pub eccentricity: f64,
    pub k0h: f64,
    pub c0h: f64,
    pub k0r: f64,
    pub c0r: f64,
    pub c1r: f64,
    pub i1r: f64,
    pub alpha_m: f64,
    pub beta_k: f64,
    pub gravity: f64,
}

pub fn building_case() -> BuildingCase {
    BuildingCase {
        n_stories: 5,
        story_mass: 9.7014e3,
        story_stiffness: 1.3132e7,
        story_rotary_inertia: 4.5842e5 / 5.0,
        story_height: 3.5,
        yield_drifts: [0.0099, 0.0092, 0.0079, 0.0059, 0.0033],
        foundation_mass: 4.8507e3,
        foundation_inertia: 4.5842e4,
        eccentricity: 3.0742,
        k0h: 5.5335e8,
        c0h: 2.1377e7,
        k0r: 3.2611e10,
        c0r: 1.1138e8,
        c1r: 8.2829e8,
        i1r: 4.4365e7,
        alpha_m: 0.78,
        beta_k: 0.0024,
        gravity: 9.806,
    }
}

impl BuildingCase {
    pub fn stories(&self, yielding: bool) -> Vec<Story> {
        (0..self.n_stories)
            .map(|i| Story {
                mass: self.story_mass,
                height: self.story_height,
                stiffness: self.story_stiffness,
                rotary_inertia: self.story_rotary_inertia,
                yield_disp: yielding.then(|| self.yield_drifts[i]),
                hardening: 0.0,
            })
            .collect()
    }

    pub fn foundation(&self) -> FoundationProps {
        FoundationProps {
            mass: self.foundation_mass,
            rotary_inertia: self.foundation_inertia,
            eccentricity: self.eccentricity,
        }
    }

    fn damping(&self) -> DampingSpec {
        DampingSpec::Rayleigh {
            alpha_m: self.alpha_m,
            beta_k: self.beta_k,
        }
    }

    /// Eight-DOF model with the internal rocking dashpot cell.
    pub fn physical_model(&self, yielding: bool) -> SystemModel {
        build_soil_structure_model(
            &self.stories(yielding),
            &self.foundation(),
            &FoundationModel::Physical {
                k0h: self.k0h,
                c0h: self.c0h,
                k0r: self.k0r,
                c0r: self.c0r,
                c1r: self.c1r,
                i1r: self.i1r,
                fk: 0.0,
                fc: 0.0,
            },
            &self.damping(),
        )
        .expect("reference model is valid")
    }

    /// Seven-DOF model with the rocking direction left to an external
    /// impedance or reference substructure.
    pub fn base_model(&self, yielding: bool) -> SystemModel {
        build_soil_structure_model(
            &self.stories(yielding),
            &self.foundation(),
            &FoundationModel::SwayOnly {
                k0h: self.k0h,
                c0h: self.c0h,
                fk: 0.0,
                fc: 0.0,
            },
            &self.damping(),
        )
        .expect("reference model is valid")
    }
}

/// Fixed-base five-story shear building with a heavy first story, used for
/// eigenanalysis checks.
pub fn shear_building_model() -> SystemModel {
    let masses = [1e5, 1e4, 1e4, 1e4, 1e4];
    let stiffnesses = [1e8, 1e8, 1e7, 1e7, 1e7];
    let stories: Vec<Story> = masses
        .iter()
        .zip(&stiffnesses)
        .map(|(&m, &k)| Story {
            mass: m,
            height: 3.0,
            stiffness: k,
            rotary_inertia: 0.0,
            yield_disp: None,
            hardening: 0.0,
        })
        .collect();
    build_soil_structure_model(
        &stories,
        &FoundationProps {
            mass: 0.0,
            rotary_inertia: 0.0,
            eccentricity: 0.0,
        },
        &FoundationModel::Fixed,
        &DampingSpec::PerStory(vec![0.0; 5]),
    )
    .expect("reference model is valid")
}
