//! The geometric constructions: circle-bundle extension, product with a line,
//! Riemannian cone, hypersurface induction, the SU(2)-to-SU(3) assemblies and
//! the evolution checks.
//!
//! Every construction ships both the reduced base-level criterion and the
//! direct total-space computation; the two verdicts are compared exactly and
//! a mismatch is reported as a failed `cross_check` (an internal-consistency
//! error, not a geometric verdict).

pub mod bundle;
pub mod cone;
pub mod evolution;
pub mod hypersurface;
pub mod product;
pub mod su3;

pub use bundle::{check_skt_bundle, extend_s1_bundle, BundleExtension};
pub use cone::{check_skt_cone, riemannian_cone, ConeExtension};
pub use evolution::{assemble_su3_from_family, check_evolution, SU2Family};
pub use hypersurface::{hypersurface_frame, induce_contact, induce_su2, Orientation};
pub use product::{check_skt_product, product_with_line, ProductExtension};
pub use su3::{su3_cone_from_su2, su3_product_from_su2};

use crate::form::Form;
use crate::frame::{CoframeAlgebra, Endo};
use crate::scalar::Scalar;
use crate::structures::AlmostContactMetric;

/// Extend the base frame by one closed covector `dt`; symbols carrying a
/// declared t-derivative acquire the matching exterior differential along it.
pub(crate) fn extend_by_line(base: &CoframeAlgebra, dt_name: &str) -> (CoframeAlgebra, usize) {
    let mut ext = base.clone();
    let dt_idx = ext.extend_with_covector(dt_name);
    ext.dt_index = Some(dt_idx);
    let dim = ext.dim();
    let dt_form = ext.covector(dt_idx);
    let ids: Vec<_> = ext
        .symbols
        .iter()
        .filter(|(_, d)| d.dt_value.is_some() && d.d_value.is_none())
        .map(|(id, _)| id)
        .collect();
    for id in ids {
        let rate = ext.symbols.get(id).dt_value.clone().unwrap();
        ext.symbols.get_mut(id).d_value = Some(dt_form.scale(&rate));
    }
    // pre-existing d-values live over the base coframe; widen them
    let ids: Vec<_> = ext.symbols.iter().map(|(id, _)| id).collect();
    for id in ids {
        if let Some(dv) = ext.symbols.get(id).d_value.clone() {
            ext.symbols.get_mut(id).d_value = Some(dv.widen(dim));
        }
    }
    (ext, dt_idx)
}

/// The almost complex structure of an extension: on base covectors
/// `J e^i = I e^i + e^i(xi) * scale * nu`, and `J nu = -(1/scale) * eta`,
/// where `nu` is the added covector. `scale = 1` for bundles and products;
/// the cone uses `scale = 1/t` with `J dt = -t eta`.
pub(crate) fn extension_complex_structure(
    acs: &AlmostContactMetric,
    ext_dim: usize,
    new_idx: usize,
    scale: &Scalar,
) -> Endo {
    let base_dim = acs.dim();
    let mut j = Endo::zero(ext_dim);
    for i in 0..base_dim {
        let mut image = acs.i.covector_image(i).widen(ext_dim);
        let xi_component = &acs.xi.components[i] * scale;
        if !xi_component.is_zero() {
            image = image.add(&Form::monomial(ext_dim, &[new_idx], xi_component));
        }
        j.set(i, &image);
    }
    let inv_scale = scale.inverse().expect("nonzero scale");
    j.set(
        new_idx,
        &acs.eta.widen(ext_dim).scale(&inv_scale).neg(),
    );
    j
}
