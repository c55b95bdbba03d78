//! Named example frames and their parameters.

use std::collections::BTreeMap;

use fusionscale::fixtures::{self, Fixture};

use crate::error::CliError;

/// `(name, parameters with defaults, description)` for every example.
pub const EXAMPLES: &[(&str, &[(&str, &str)], &str)] = &[
    ("riesz_u", &[("u1", "1"), ("u2", "0"), ("u3", "0")], "Riesz basis {span{u}, span{e2, e3}} of R^3"),
    ("one_excess_alpha", &[("alpha", "0.5"), ("dim", "4")], "1-excess frame, scalable for 0 < alpha < sqrt(2)/2"),
    ("h4_beta", &[("a1", "1"), ("a2", "1"), ("a3", "1"), ("a4", "1"), ("beta", "1")], "1-excess frame span{a} over a skewed Riesz basis of R^4"),
    ("two_excess_h3", &[], "two copies of span{e1, e2} next to span{e3}"),
    ("two_excess_h4", &[], "2-excess frame of R^4 scaled by c = 2/3"),
    ("nonscalable_h3", &[], "frame containing an orthonormal basis that is not strictly scalable"),
    (
        "big_h7",
        &[("a1", "1"), ("a2", "1"), ("a3", "1"), ("a4", "1"), ("a5", "1"), ("a6", "1"), ("a7", "1"), ("beta", "1")],
        "2-excess frame truncated to R^7",
    ),
    ("shift_trunc", &[("m", "2")], "shift construction truncated to R^(2m+1)"),
    ("zdual_trunc", &[("n", "2"), ("m", "2"), ("M", "")], "alternate dual of shift_trunc(M), M defaults to max(n, m) + 2"),
    ("mercedes_benz", &[], "three lines at 120 degrees in R^2"),
    ("repeated_subspace", &[("n", "2"), ("skew", "0")], "span{e1} repeated n more times next to a Riesz basis of R^2"),
    ("tight2_h9", &[], "2-tight frame with large excess, truncated to R^9"),
    ("one_subspace_h4", &[], "two excess vectors adjoined to a single subspace of R^4"),
    ("ortho_excess_h3", &[], "orthonormal basis of R^3 with two lines repeated"),
    ("orthonormal", &[("n", "3")], "canonical basis of R^n as n lines"),
];

struct Params<'a> {
    name: &'a str,
    values: &'a BTreeMap<String, String>,
    defaults: &'a [(&'a str, &'a str)],
}

impl Params<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str).or_else(|| {
            self.defaults.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).filter(|v| !v.is_empty())
        })
    }

    fn f64(&self, key: &str) -> Result<f64, CliError> {
        let raw = self.raw(key).expect("every real parameter has a default");
        raw.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
            CliError::ParameterOutOfRange(format!("{}: {key} = `{raw}` is not a finite number", self.name))
        })
    }

    fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.raw(key)
            .map(|raw| {
                raw.parse::<usize>().map_err(|_| {
                    CliError::ParameterOutOfRange(format!("{}: {key} = `{raw}` is not a nonnegative integer", self.name))
                })
            })
            .transpose()
    }

    fn array<const N: usize>(&self, prefix: &str) -> Result<[f64; N], CliError> {
        let mut out = [0.0; N];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.f64(&format!("{prefix}{}", i + 1))?;
        }
        Ok(out)
    }
}

/// Builds the example `name` with `params` overriding the defaults.
pub fn build(name: &str, params: &BTreeMap<String, String>) -> Result<Fixture, CliError> {
    let (_, defaults, _) = EXAMPLES
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| CliError::UnknownExample(name.to_string()))?;
    if let Some(key) = params.keys().find(|k| !defaults.iter().any(|(d, _)| d == k)) {
        return Err(CliError::ParameterOutOfRange(format!("{name} has no parameter `{key}`")));
    }
    let p = Params { name, values: params, defaults };
    let fixture = match name {
        "riesz_u" => fixtures::riesz_u(p.array::<3>("u")?),
        "one_excess_alpha" => fixtures::one_excess_alpha(p.f64("alpha")?, p.usize("dim")?.unwrap_or(4)),
        "h4_beta" => fixtures::h4_beta(p.array::<4>("a")?, p.f64("beta")?),
        "two_excess_h3" => fixtures::two_excess_h3(),
        "two_excess_h4" => fixtures::two_excess_h4(),
        "nonscalable_h3" => fixtures::nonscalable_h3(),
        "big_h7" => fixtures::big_h7(p.array::<7>("a")?, p.f64("beta")?),
        "shift_trunc" => fixtures::shift_trunc(p.usize("m")?.unwrap_or(2)),
        "zdual_trunc" => {
            let n = p.usize("n")?.unwrap_or(2);
            let m = p.usize("m")?.unwrap_or(2);
            let big_m = p.usize("M")?.unwrap_or(n.max(m) + 2);
            fixtures::zdual_trunc(n, m, big_m)
        }
        "mercedes_benz" => fixtures::mercedes_benz(),
        "repeated_subspace" => fixtures::repeated_subspace(p.usize("n")?.unwrap_or(2), p.f64("skew")?),
        "tight2_h9" => fixtures::tight2_h9(),
        "one_subspace_h4" => fixtures::one_subspace_h4(),
        "ortho_excess_h3" => fixtures::ortho_excess_h3(),
        "orthonormal" => fixtures::orthonormal(p.usize("n")?.unwrap_or(3)),
        _ => unreachable!("names come from EXAMPLES"),
    };
    fixture.map_err(|e| match e {
        fusionscale::Error::ParameterOutOfRange(msg) => CliError::ParameterOutOfRange(format!("{name}: {msg}")),
        other => other.into(),
    })
}
