pub mod curve;
pub mod eigenfunctions;
pub mod kernel;
pub mod perturb;
pub mod pseudospectrum;
pub mod spectrum;

use num_complex::Complex;
use pseudospec_core::operator::OscillatorParams;

use crate::config::CommonConfig;
use crate::CliError;

pub(crate) fn oscillator_params(common: &CommonConfig) -> Result<OscillatorParams<f64>, CliError> {
    Ok(OscillatorParams::new(Complex::new(common.c_re, common.c_im))?)
}

pub(crate) fn write_if(
    wanted: bool,
    path: &std::path::Path,
    bytes: &[u8],
) -> Result<(), CliError> {
    if wanted {
        crate::io::write_atomic(path, bytes).map_err(CliError::io)?;
    }
    Ok(())
}
