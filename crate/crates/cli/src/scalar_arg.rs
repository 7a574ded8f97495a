//! Flag values: decimals or simple rationals such as `-1/2`, so that
//! half-integer parameters reach the library exactly.

pub fn parse_scalar(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {s:?}"))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {s:?}"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            num / den
        }
        None => s.parse().map_err(|_| format!("not a number: {s:?}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScalarList(pub Vec<f64>);

/// Comma-separated scalars; the empty string is the empty list.
pub fn parse_list(s: &str) -> Result<ScalarList, String> {
    if s.trim().is_empty() {
        return Ok(ScalarList::default());
    }
    s.split(',')
        .map(parse_scalar)
        .collect::<Result<_, _>>()
        .map(ScalarList)
}
