//! Assembly of lumped sway-rocking models.
//!
//! Degrees of freedom are ordered as `[v_1 .. v_n, u_f, phi, phi_1]`: story
//! displacements relative to the foundation, foundation sway relative to the
//! ground, foundation rocking, and (for the physical support) the internal
//! rocking dashpot-cell rotation.  Fixed-base models carry the story block
//! only.

use nalgebra::{DMatrix, DVector};

use crate::material::NonlinearMaterial;
use crate::ModelError;

/// Role of a degree of freedom in the assembled model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DofKind {
    /// Story displacement, zero-based story index.
    Story(usize),
    FoundationSway,
    FoundationRocking,
    /// Rotation of the internal rocking dashpot cell.
    InternalRocking,
}

/// Ordered DOF roles plus the set of DOFs that touch the soil.
#[derive(Debug, Clone)]
pub struct DofLayout {
    pub kinds: Vec<DofKind>,
    /// Indices of the foundation DOFs that carry impedance or reference
    /// substructure terms (sway and rocking).  Empty for fixed-base models.
    pub boundary: Vec<usize>,
}

impl DofLayout {
    pub fn ndof(&self) -> usize {
        self.kinds.len()
    }

    /// Short label for CSV headers and diagnostics.
    pub fn label(&self, i: usize) -> String {
        match self.kinds[i] {
            DofKind::Story(s) => format!("v{}", s + 1),
            DofKind::FoundationSway => "uf".to_string(),
            DofKind::FoundationRocking => "phi".to_string(),
            DofKind::InternalRocking => "phi1".to_string(),
        }
    }
}

/// Spring acting on the difference of two displacement DOFs (or on a single
/// DOF when `lower` is `None`, the drift of the first story).
#[derive(Debug, Clone)]
pub struct StorySpring {
    pub upper: usize,
    pub lower: Option<usize>,
    pub material: NonlinearMaterial,
}

impl StorySpring {
    pub fn drift(&self, u: &DVector<f64>) -> f64 {
        u[self.upper] - self.lower.map_or(0.0, |l| u[l])
    }
}

/// Superstructure story: lumped mass and rotary inertia at the top of the
/// story column, elastic (or yielding) shear stiffness across it.
#[derive(Debug, Clone, Copy)]
pub struct Story {
    pub mass: f64,
    pub height: f64,
    pub stiffness: f64,
    pub rotary_inertia: f64,
    /// Yield drift; `None` keeps the story elastic.
    pub yield_disp: Option<f64>,
    /// Post-yield tangent ratio in `[0, 1)`; ignored for elastic stories.
    pub hardening: f64,
}

/// Rigid foundation block properties.
#[derive(Debug, Clone, Copy)]
pub struct FoundationProps {
    pub mass: f64,
    pub rotary_inertia: f64,
    /// Embedment lever arm `e`: story heights are measured above it, the
    /// block centroid sits at `e / 2`.
    pub eccentricity: f64,
}

/// Support condition under the foundation block.
#[derive(Debug, Clone, Copy)]
pub enum FoundationModel {
    /// No foundation DOFs at all.
    Fixed,
    /// Sway spring-dashpot plus the rocking spring and internal dashpot cell;
    /// reproduces a frequency-dependent rocking impedance exactly.
    Physical {
        k0h: f64,
        c0h: f64,
        k0r: f64,
        c0r: f64,
        c1r: f64,
        i1r: f64,
        fk: f64,
        fc: f64,
    },
    /// Sway spring-dashpot only; the rocking direction is left free for an
    /// external impedance or a reference substructure.
    SwayOnly { k0h: f64, c0h: f64, fk: f64, fc: f64 },
    /// Sway plus a constant rocking spring-dashpot (an impedance frozen at
    /// one frequency).
    SwayRocking {
        k0h: f64,
        c0h: f64,
        kr: f64,
        cr: f64,
        fk: f64,
        fc: f64,
    },
}

impl FoundationModel {
    /// Physical support from cone-model constants.
    pub fn physical_from_cone(p: &crate::cone::ConeFoundationParams) -> Self {
        FoundationModel::Physical {
            k0h: p.k0h,
            c0h: p.c0h,
            k0r: p.k0r,
            c0r: p.c0r,
            c1r: p.c1r,
            i1r: p.i1r,
            fk: p.fk,
            fc: p.fc,
        }
    }

    /// Sway-only support from cone-model constants.
    pub fn sway_only_from_cone(p: &crate::cone::ConeFoundationParams) -> Self {
        FoundationModel::SwayOnly {
            k0h: p.k0h,
            c0h: p.c0h,
            fk: p.fk,
            fc: p.fc,
        }
    }
}

/// Superstructure damping.
#[derive(Debug, Clone)]
pub enum DampingSpec {
    /// One dashpot across each story drift.
    PerStory(Vec<f64>),
    /// Rayleigh damping `alpha_m * M_s + beta_k * K_s`, where `M_s` is the
    /// superstructure inertia (foundation block and internal cell excluded)
    /// and `K_s` the initial story-chain stiffness.
    Rayleigh { alpha_m: f64, beta_k: f64 },
}

/// Assembled second-order model `M a + C v + K u + f_s(u) = -M iota a_g`.
///
/// `stiffness` holds every linear term that is not carried by the story
/// springs; the springs contribute their (possibly yielding) forces through
/// [`internal_force_and_tangent`](Self::internal_force_and_tangent).
#[derive(Debug, Clone)]
pub struct SystemModel {
    pub mass: DMatrix<f64>,
    pub damping: DMatrix<f64>,
    pub stiffness: DMatrix<f64>,
    pub springs: Vec<StorySpring>,
    /// Influence vector mapping the ground acceleration to nodal loads.
    pub influence: DVector<f64>,
    pub layout: DofLayout,
}

impl SystemModel {
    pub fn ndof(&self) -> usize {
        self.layout.ndof()
    }

    /// Stiffness with every story spring at its elastic tangent.
    pub fn initial_stiffness(&self) -> DMatrix<f64> {
        let mut k = self.stiffness.clone();
        for s in &self.springs {
            add_drift_coupling(&mut k, s.upper, s.lower, s.material.k_elastic());
        }
        k
    }

    /// True when no story spring can yield.
    pub fn is_linear(&self) -> bool {
        self.springs.iter().all(|s| s.material.is_elastic())
    }

    /// Trial internal force vector and tangent stiffness at displacement `u`.
    pub fn internal_force_and_tangent(&self, u: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>) {
        let mut f = &self.stiffness * u;
        let mut kt = self.stiffness.clone();
        for s in &self.springs {
            let (fs, ks) = s.material.force_and_tangent(s.drift(u));
            f[s.upper] += fs;
            if let Some(l) = s.lower {
                f[l] -= fs;
            }
            add_drift_coupling(&mut kt, s.upper, s.lower, ks);
        }
        (f, kt)
    }

    /// Commit the converged displacement into the spring states.
    pub fn commit(&mut self, u: &DVector<f64>) {
        for s in &mut self.springs {
            let d = u[s.upper] - s.lower.map_or(0.0, |l| u[l]);
            s.material.commit(d);
        }
    }

    /// Discard all plastic history.
    pub fn reset_materials(&mut self) {
        for s in &mut self.springs {
            s.material.reset();
        }
    }

    /// `M * iota`: per-DOF load coefficients of the ground acceleration
    /// (the load vector is `-load_coefficients() * a_g`).
    pub fn load_coefficients(&self) -> DVector<f64> {
        &self.mass * &self.influence
    }

    /// Add constant spring/dashpot terms at one DOF (diagonal only).
    pub fn add_spring_damper(&mut self, dof: usize, k: f64, c: f64) {
        self.stiffness[(dof, dof)] += k;
        self.damping[(dof, dof)] += c;
    }

    /// Add reference-substructure blocks over the boundary DOFs.  The block
    /// matrices are indexed like `layout.boundary`.
    pub fn add_boundary_matrices(
        &mut self,
        m: &DMatrix<f64>,
        c: &DMatrix<f64>,
        k: &DMatrix<f64>,
    ) -> Result<(), ModelError> {
        let nb = self.layout.boundary.len();
        for (name, mat) in [("mass", m), ("damping", c), ("stiffness", k)] {
            if mat.nrows() != nb || mat.ncols() != nb {
                return Err(ModelError::InvalidModel(format!(
                    "boundary {name} block must be {nb}x{nb}, got {}x{}",
                    mat.nrows(),
                    mat.ncols()
                )));
            }
        }
        for (bi, &di) in self.layout.boundary.iter().enumerate() {
            for (bj, &dj) in self.layout.boundary.iter().enumerate() {
                self.mass[(di, dj)] += m[(bi, bj)];
                self.damping[(di, dj)] += c[(bi, bj)];
                self.stiffness[(di, dj)] += k[(bi, bj)];
            }
        }
        Ok(())
    }

    /// Mass block over the boundary DOFs.
    pub fn mass_boundary_block(&self) -> DMatrix<f64> {
        let b = &self.layout.boundary;
        DMatrix::from_fn(b.len(), b.len(), |i, j| self.mass[(b[i], b[j])])
    }
}

/// Scatter a drift-coupled scalar term into a matrix: `val` on the upper
/// diagonal entry and, when a lower DOF exists, the full rank-one coupling.
pub fn add_drift_coupling(mat: &mut DMatrix<f64>, upper: usize, lower: Option<usize>, val: f64) {
    mat[(upper, upper)] += val;
    if let Some(l) = lower {
        mat[(l, l)] += val;
        mat[(upper, l)] -= val;
        mat[(l, upper)] -= val;
    }
}

// Spring or dashpot attached below the foundation block at height offset
// `off` along the rocking rotation: rank-one term over (sway, rocking).
fn add_offset_cell(mat: &mut DMatrix<f64>, iu: usize, ip: usize, val: f64, off: f64) {
    mat[(iu, iu)] += val;
    if off != 0.0 {
        mat[(iu, ip)] += val * off;
        mat[(ip, iu)] += val * off;
        mat[(ip, ip)] += val * off * off;
    }
}

fn story_material(s: &Story) -> Result<NonlinearMaterial, ModelError> {
    match s.yield_disp {
        None => NonlinearMaterial::elastic(s.stiffness),
        Some(uy) => {
            if s.hardening == 0.0 {
                NonlinearMaterial::elastic_perfectly_plastic(s.stiffness, uy)
            } else {
                NonlinearMaterial::kinematic_hardening(s.stiffness, uy, s.hardening)
            }
        }
    }
}

fn validate_stories(stories: &[Story]) -> Result<(), ModelError> {
    if stories.is_empty() {
        return Err(ModelError::InvalidModel("model needs at least one story".into()));
    }
    for (i, s) in stories.iter().enumerate() {
        if !(s.mass > 0.0) || !(s.stiffness > 0.0) || !(s.height > 0.0) {
            return Err(ModelError::InvalidModel(format!(
                "story {i}: mass, stiffness and height must be positive"
            )));
        }
        if s.rotary_inertia < 0.0 {
            return Err(ModelError::InvalidModel(format!(
                "story {i}: rotary inertia must be non-negative"
            )));
        }
    }
    Ok(())
}

/// Assemble a shear building on the given support.
///
/// Story heights stack from the foundation level; with embedment `e` the
/// story lever arms about the rocking DOF are `z_i = e + sum(h_1..h_i)` and
/// the block centroid acts at `e / 2`.
pub fn build_soil_structure_model(
    stories: &[Story],
    foundation: &FoundationProps,
    support: &FoundationModel,
    damping: &DampingSpec,
) -> Result<SystemModel, ModelError> {
    validate_stories(stories)?;
    if foundation.mass < 0.0 || foundation.rotary_inertia < 0.0 || foundation.eccentricity < 0.0 {
        return Err(ModelError::InvalidModel(
            "foundation mass, rotary inertia and eccentricity must be non-negative".into(),
        ));
    }
    let n = stories.len();
    if let DampingSpec::PerStory(c) = damping {
        if c.len() != n {
            return Err(ModelError::InvalidModel(format!(
                "per-story damping needs {n} values, got {}",
                c.len()
            )));
        }
    }

    if matches!(support, FoundationModel::Fixed) {
        return build_fixed_base(stories, damping);
    }

    let has_internal = matches!(support, FoundationModel::Physical { .. });
    let ndof = n + 2 + usize::from(has_internal);
    let (iu, ip) = (n, n + 1);
    let iq = n + 2;

    let mut kinds: Vec<DofKind> = (0..n).map(DofKind::Story).collect();
    kinds.push(DofKind::FoundationSway);
    kinds.push(DofKind::FoundationRocking);
    if has_internal {
        kinds.push(DofKind::InternalRocking);
    }
    let layout = DofLayout {
        kinds,
        boundary: vec![iu, ip],
    };

    let e = foundation.eccentricity;
    let mut z = Vec::with_capacity(n);
    let mut acc = e;
    for s in stories {
        acc += s.height;
        z.push(acc);
    }

    // superstructure inertia, used both in M and in the Rayleigh mass term
    let mut m_super = DMatrix::zeros(ndof, ndof);
    for i in 0..n {
        let mi = stories[i].mass;
        m_super[(i, i)] = mi;
        m_super[(i, iu)] = mi;
        m_super[(iu, i)] = mi;
        m_super[(i, ip)] = mi * z[i];
        m_super[(ip, i)] = mi * z[i];
        m_super[(iu, iu)] += mi;
        m_super[(iu, ip)] += mi * z[i];
        m_super[(ip, iu)] += mi * z[i];
        m_super[(ip, ip)] += mi * z[i] * z[i] + stories[i].rotary_inertia;
    }

    let mut mass = m_super.clone();
    mass[(iu, iu)] += foundation.mass;
    mass[(iu, ip)] += foundation.mass * e / 2.0;
    mass[(ip, iu)] += foundation.mass * e / 2.0;
    mass[(ip, ip)] += foundation.mass * (e / 2.0) * (e / 2.0) + foundation.rotary_inertia;

    let mut stiffness = DMatrix::zeros(ndof, ndof);
    let mut damp = DMatrix::zeros(ndof, ndof);

    match *support {
        FoundationModel::Fixed => unreachable!(),
        FoundationModel::Physical {
            k0h,
            c0h,
            k0r,
            c0r,
            c1r,
            i1r,
            fk,
            fc,
        } => {
            add_offset_cell(&mut stiffness, iu, ip, k0h, fk);
            add_offset_cell(&mut damp, iu, ip, c0h, fc);
            stiffness[(ip, ip)] += k0r;
            damp[(ip, ip)] += c0r + c1r;
            damp[(ip, iq)] -= c1r;
            damp[(iq, ip)] -= c1r;
            damp[(iq, iq)] += c1r;
            mass[(iq, iq)] += i1r;
        }
        FoundationModel::SwayOnly { k0h, c0h, fk, fc } => {
            add_offset_cell(&mut stiffness, iu, ip, k0h, fk);
            add_offset_cell(&mut damp, iu, ip, c0h, fc);
        }
        FoundationModel::SwayRocking {
            k0h,
            c0h,
            kr,
            cr,
            fk,
            fc,
        } => {
            add_offset_cell(&mut stiffness, iu, ip, k0h, fk);
            add_offset_cell(&mut damp, iu, ip, c0h, fc);
            stiffness[(ip, ip)] += kr;
            damp[(ip, ip)] += cr;
        }
    }

    let springs = build_springs(stories)?;
    apply_super_damping(&mut damp, stories, &m_super, damping);

    let mut influence = DVector::zeros(ndof);
    influence[iu] = 1.0;

    Ok(SystemModel {
        mass,
        damping: damp,
        stiffness,
        springs,
        influence,
        layout,
    })
}

fn build_fixed_base(stories: &[Story], damping: &DampingSpec) -> Result<SystemModel, ModelError> {
    let n = stories.len();
    let layout = DofLayout {
        kinds: (0..n).map(DofKind::Story).collect(),
        boundary: vec![],
    };
    let mut mass = DMatrix::zeros(n, n);
    for i in 0..n {
        mass[(i, i)] = stories[i].mass;
    }
    let mut damp = DMatrix::zeros(n, n);
    apply_super_damping(&mut damp, stories, &mass, damping);
    Ok(SystemModel {
        mass,
        damping: damp,
        stiffness: DMatrix::zeros(n, n),
        springs: build_springs(stories)?,
        influence: DVector::from_element(n, 1.0),
        layout,
    })
}

fn build_springs(stories: &[Story]) -> Result<Vec<StorySpring>, ModelError> {
    stories
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Ok(StorySpring {
                upper: i,
                lower: (i > 0).then(|| i - 1),
                material: story_material(s)?,
            })
        })
        .collect()
}

fn apply_super_damping(
    damp: &mut DMatrix<f64>,
    stories: &[Story],
    m_super: &DMatrix<f64>,
    spec: &DampingSpec,
) {
    match spec {
        DampingSpec::PerStory(cs) => {
            for (i, &c) in cs.iter().enumerate() {
                add_drift_coupling(damp, i, (i > 0).then(|| i - 1), c);
            }
        }
        DampingSpec::Rayleigh { alpha_m, beta_k } => {
            let mut k0 = DMatrix::zeros(damp.nrows(), damp.ncols());
            for (i, s) in stories.iter().enumerate() {
                add_drift_coupling(&mut k0, i, (i > 0).then(|| i - 1), s.stiffness);
            }
            *damp += m_super * *alpha_m + k0 * *beta_k;
        }
    }
}
