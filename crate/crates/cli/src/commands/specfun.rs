use clap::ValueEnum;
use colloids_specfun::{bessel_k_scaled, erfc, interaction_coefficient, polylog_half, theta_k};

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecialFunction {
    /// K_m(t): first argument m, then t values.
    Besselk,
    /// Θ_k(x): first argument k, then x values.
    Theta,
    /// Li_{1/2}(x) for each x.
    Polylog,
    /// erfc(x) for each x.
    Erfc,
    /// c_k for each integer k.
    Ck,
}

fn number(text: &str) -> Result<f64> {
    text.trim().parse::<f64>().map_err(|_| CliError::Config(format!("'{text}' is not a number")))
}

fn integer(text: &str) -> Result<i64> {
    text.trim().parse::<i64>().map_err(|_| CliError::Config(format!("'{text}' is not an integer")))
}

fn order(args: &[String]) -> Result<(u32, &[String])> {
    let (first, rest) = args.split_first().ok_or_else(|| CliError::Config("missing order argument".into()))?;
    let m = u32::try_from(integer(first)?).map_err(|_| CliError::Config(format!("order {first} must be nonnegative")))?;
    Ok((m, rest))
}

/// Evaluate `function` at `args`, one value per output line. With `scaled`,
/// Bessel values are multiplied by e^t.
pub fn evaluate(function: SpecialFunction, args: &[String], scaled: bool) -> Result<Vec<String>> {
    match function {
        SpecialFunction::Besselk => {
            let (m, rest) = order(args)?;
            rest.iter()
                .map(|a| {
                    let t = number(a)?;
                    let v = bessel_k_scaled(m, t)?;
                    Ok(if scaled { v } else { v * (-t).exp() }.to_string())
                })
                .collect()
        }
        SpecialFunction::Theta => {
            let (k, rest) = order(args)?;
            rest.iter().map(|a| Ok(theta_k(k, number(a)?)?.to_string())).collect()
        }
        SpecialFunction::Polylog => args.iter().map(|a| Ok(polylog_half(number(a)?)?.to_string())).collect(),
        SpecialFunction::Erfc => args.iter().map(|a| Ok(erfc(number(a)?).to_string())).collect(),
        SpecialFunction::Ck => args.iter().map(|a| Ok(interaction_coefficient(integer(a)?).to_string())).collect(),
    }
}
