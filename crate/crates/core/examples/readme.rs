use qfft::{phase_space, reference_dft::random_state, Plan};

fn main() -> qfft::Result<()> {
    let plan = Plan::prime_factor(&[3, 5, 7])?;
    let s = random_state(105, 42)?;
    let spectrum = plan.forward(&s)?;
    let wigner = phase_space::wigner_fast(&s, &plan)?;
    assert!(wigner.max_imag() < 1e-12);
    println!("|F s(0)| = {:.4}", spectrum.get(0).norm());
    Ok(())
}
