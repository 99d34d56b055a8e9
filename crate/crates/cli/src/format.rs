//! Number and unit formatting shared by the human renderings.

use shannon_core::Base;

/// Six decimals, without a sign on values that round to zero.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-')
        .bytes()
        .all(|b| b == b'0' || b == b'.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Residual-style scientific notation, e.g. `1.234e-16`.
pub fn sci(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.3e}")
    }
}

/// `bits`, `nats`, `hartleys`, or `units of log base b`.
pub fn unit(base: Base) -> String {
    match base.unit() {
        Some(u) => u.to_string(),
        None => format!("units of log base {}", base.value()),
    }
}

/// Parses a `--base` value: a real greater than one, or `e`.
pub fn parse_base(s: &str) -> Result<Base, String> {
    let value = if s == "e" {
        std::f64::consts::E
    } else {
        s.parse::<f64>()
            .map_err(|_| format!("`{s}` is not a number or `e`"))?
    };
    Base::new(value).map_err(|e| e.to_string())
}
