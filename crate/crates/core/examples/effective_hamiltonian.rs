//! Eliminates the far-detuned states of the iSWAP chain and compares the
//! result with the closed forms.

use multiphoton::effective::{canonical_model, closed_form_params, iswap_exact};
use multiphoton::params::{Detuning, Gate, GateParams};

fn main() -> multiphoton::Result<()> {
    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>10}",
        "delta", "numeric", "exact", "approx", "rel err"
    );
    for delta in [5.0, 10.0, 20.0, 40.0, 80.0] {
        let p = GateParams::with_common_detuning(Gate::Iswap, 1.0, delta)
            .set_detuning(4, Detuning::Fixed(0.0));
        let (h, model) = canonical_model(&p)?;
        let numeric = model.coupling(0, 1).re;
        let (exact, _) = iswap_exact(&p)?;
        let approx = closed_form_params(&p)?.coupling();
        println!(
            "{delta:>6} {numeric:>14.6e} {exact:>14.6e} {approx:>14.6e} {:>10.2e}",
            ((numeric - approx) / approx).abs()
        );
        if delta == 10.0 {
            println!(
                "       full dimension {}, kept {:?}",
                h.dim(),
                model.p_indices
            );
            println!("       level shifts {:?}", model.shifts());
        }
    }
    Ok(())
}
