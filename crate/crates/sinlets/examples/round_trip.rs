use sinlets::transform::{decompose, reconstruct, BasisKind};
use sinlets::{PhaseKind, SampledSignal64, SinletBasis64};

fn main() -> sinlets::Result<()> {
    let basis = SinletBasis64::from_params(PhaseKind::Logistic, 0.0, 1.5)?;
    let signal = SampledSignal64::from_fn(-10.0, 10.0, 4001, |t| {
        (-t * t / 4.0).exp() * (2.0 * t).sin()
    })?;
    let coeffs = decompose(&signal, &basis, 16, BasisKind::Sin)?;
    let rebuilt = reconstruct(&coeffs, signal.times())?;
    assert!(rebuilt.rms_difference(&signal)? < 1e-2);
    Ok(())
}
