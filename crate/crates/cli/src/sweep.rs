use conevol_core::{
    existence_interval, strand_length, volume, Error, Evaluation, ExactScalar, Rational,
    TorusLinkParams,
};

use crate::error::CliError;

pub const MAX_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: ExactScalar,
    pub volume: ExactScalar,
    pub length_per_component: ExactScalar,
    pub alpha_rad: f64,
    pub volume_float: f64,
    pub length_float: f64,
}

/// `samples` equally spaced angles strictly inside the admissible window,
/// `lower + i * width / (samples + 1)` for `i = 1..=samples`.
pub fn run_sweep(params: &TorusLinkParams, samples: usize) -> Result<Vec<SweepRow>, CliError> {
    if samples < 2 {
        return Err(CliError::Usage(format!(
            "sweep needs at least 2 samples, got {samples}"
        )));
    }
    if samples > MAX_SAMPLES {
        return Err(Error::ParameterTooLarge {
            name: "samples",
            value: samples as i64,
            max: MAX_SAMPLES as u64,
        }
        .into());
    }
    let window = existence_interval::<Rational>(params);
    let lower = window.effective_lower();
    let step = window
        .upper()
        .try_sub(&lower)?
        .scale(&Rational::new(1.into(), (samples as u64 + 1).into()));

    (1..=samples)
        .map(|i| {
            let alpha = lower.try_add(&step.scale(&Rational::from_integer(i.into())))?;
            let volume = volume(params, &alpha, Evaluation::Strict)?;
            let length = strand_length(params, &alpha, Evaluation::Strict)?;
            Ok::<_, Error>(SweepRow {
                alpha_rad: alpha.to_float()?,
                volume_float: volume.to_float()?,
                length_float: length.to_float()?,
                alpha,
                volume,
                length_per_component: length,
            })
        })
        .collect::<Result<_, _>>()
        .map_err(CliError::from)
}
