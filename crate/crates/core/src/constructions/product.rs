//! Product of an almost contact metric base with a line: the trivial-bundle
//! case `d(dt) = 0`, `h = g + (dt)^2`, `F = omega + eta ^ dt`.

use crate::frame::CoframeAlgebra;
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::structures::{
    check_skt, classify_contact, skt_verdict, AlmostContactMetric, HermitianStructure,
};

pub struct ProductExtension {
    pub frame: CoframeAlgebra,
    pub base_dim: usize,
    pub dt_index: usize,
    pub hermitian: HermitianStructure,
}

pub fn product_with_line(
    frame: &CoframeAlgebra,
    acs: &AlmostContactMetric,
) -> ProductExtension {
    let base_dim = frame.dim();
    let (ext, dt_index) = super::extend_by_line(frame, "dt");
    let dim = ext.dim();
    let j = super::extension_complex_structure(acs, dim, dt_index, &Scalar::one());
    let mut h = Matrix::zero(dim, dim);
    for i in 0..base_dim {
        for k in 0..base_dim {
            h.set(i, k, acs.g.get(i, k).clone());
        }
    }
    h.set(dt_index, dt_index, Scalar::one());
    let hermitian = HermitianStructure::new(j, h);
    debug_assert_eq!(
        hermitian.f,
        acs.omega
            .widen(dim)
            .add(&acs.eta.widen(dim).wedge(&ext.covector(dt_index)))
    );
    ProductExtension {
        frame: ext,
        base_dim,
        dt_index,
        hermitian,
    }
}

/// Reduced SKT criterion on the base — normality together with
/// `d(I(d omega)) = d(d eta ^ eta)` and `d(I(i_xi d omega)) = 0` — against
/// the direct check on the product.
pub fn check_skt_product(frame: &CoframeAlgebra, acs: &AlmostContactMetric) -> Report {
    let mut report = Report::new("skt.product");
    let (class, class_report) = classify_contact(acs, frame);
    report.extend(class_report);
    let domega = frame.d(&acs.omega);
    let deta = frame.d(&acs.eta);
    let eq1 = frame
        .d(&acs.i.apply_form(&domega))
        .sub(&frame.d(&deta.wedge(&acs.eta)));
    report.push(Check::obstruction("skt.product.torsion_closure", &eq1, frame));
    let eq2 = frame.d(&acs.i.apply_form(&frame.contract(&acs.xi, &domega)));
    report.push(Check::obstruction("skt.product.contract_closure", &eq2, frame));
    if class.normal && class.omega_closed {
        // quasi-Sasakian case: the criterion collapses to d eta ^ d eta = 0
        report.push(
            Check::obstruction("skt.product.deta_square", &deta.wedge(&deta), frame)
                .assuming("base is quasi-Sasakian"),
        );
    }
    let product = product_with_line(frame, acs);
    let direct_report = check_skt(&product.hermitian, &product.frame);
    let structures_valid =
        acs.validate(frame).holds() && product.hermitian.validate(&product.frame).holds();
    let direct = structures_valid && skt_verdict(&product.hermitian, &product.frame);
    report.absorb("skt.product.direct", direct_report);
    let reduced = structures_valid && class.normal && eq1.is_zero() && eq2.is_zero();
    report.push(
        Check::new("skt.product.cross_check", reduced == direct)
            .noting(format!("reduced verdict {reduced}, direct verdict {direct}")),
    );
    report.push(
        Check::new("skt.product.skt", reduced)
            .info()
            .noting("verdict of the reduced base-level criterion"),
    );
    report
}
