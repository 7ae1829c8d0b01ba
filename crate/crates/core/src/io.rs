//! File formats.
//!
//! Matrices: `{"d": 2, "matrix": [[[re, im], ...], ...]}`, one array per row.
//!
//! Distributions (JSON):
//! `{"input": [r...], "outcomes": [{"state": [r...], "probability": p, "amplitude": [re, im]}, ...]}`
//!
//! Distributions (CSV, `;`-separated): header `state;probability`, then one
//! `|r1,...,rd⟩;p` line per outcome.
//!
//! Floats are always written with 17 significant digits so output is
//! byte-stable and round-trips exactly.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bosonic::OutputDistribution;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// serde_json formatter printing every float as `{:.16e}`, with negative
/// zero written as zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct FixedPrecision;

impl serde_json::ser::Formatter for FixedPrecision {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_float(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Formats a float the same way the JSON writer does.
pub fn format_float(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// Serializes `value` as one line of compact JSON with [`FixedPrecision`].
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedPrecision);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    d: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

pub fn parse_matrix_json(text: &str) -> Result<ComplexMatrix> {
    let file: MatrixFile = serde_json::from_str(text)?;
    if file.matrix.len() != file.d {
        return Err(Error::Parse(format!(
            "\"d\" is {} but matrix has {} rows",
            file.d,
            file.matrix.len()
        )));
    }
    if let Some((r, row)) = file
        .matrix
        .iter()
        .enumerate()
        .find(|(_, row)| row.len() != file.d)
    {
        return Err(Error::Parse(format!(
            "row {r} has {} entries, expected {}",
            row.len(),
            file.d
        )));
    }
    let rows: Vec<Vec<Complex64>> = file
        .matrix
        .iter()
        .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    if file.d == 0 {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    ComplexMatrix::from_rows(&rows)
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Result<String> {
    m.require_square()?;
    let file = MatrixFile {
        d: m.rows(),
        matrix: m
            .row_major()
            .iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect(),
    };
    to_json_string(&file)
}

#[derive(Serialize)]
struct DistributionFile<'a> {
    input: &'a [usize],
    outcomes: Vec<Outcome<'a>>,
}

#[derive(Serialize)]
struct Outcome<'a> {
    state: &'a [usize],
    probability: f64,
    amplitude: [f64; 2],
}

/// JSON rendering of a distribution, probabilities clamped at zero.
pub fn distribution_to_json(dist: &OutputDistribution) -> Result<String> {
    let probs = dist.clamped_probabilities();
    let outcomes = dist
        .basis
        .states()
        .iter()
        .zip(&probs)
        .zip(&dist.amplitudes)
        .map(|((s, &p), a)| Outcome {
            state: s.as_slice(),
            probability: p,
            amplitude: [a.re, a.im],
        })
        .collect();
    to_json_string(&DistributionFile {
        input: dist.input.as_slice(),
        outcomes,
    })
}

pub fn write_distribution_csv<W: Write>(dist: &OutputDistribution, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().delimiter(b';').from_writer(out);
    w.write_record(["state", "probability"])?;
    for (state, p) in dist.basis.states().iter().zip(dist.clamped_probabilities()) {
        w.write_record([state.to_string(), format_float(p)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn distribution_to_csv(dist: &OutputDistribution) -> Result<String> {
    let mut buf = Vec::new();
    write_distribution_csv(dist, &mut buf)?;
    Ok(String::from_utf8(buf).expect("UTF-8 output"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bosonic::output_distribution;
    use crate::fock::OccupationVector;
    use crate::transforms::{random_haar_unitary, UnitaryMatrix};
    use proptest::prelude::*;

    #[test]
    fn parses_beamsplitter_file() {
        let text = r#"{"d": 2, "matrix": [[[0.7071067811865476, 0], [0.7071067811865476, 0]],
                                          [[0.7071067811865476, 0], [-0.7071067811865476, 0]]]}"#;
        let m = parse_matrix_json(text).unwrap();
        assert_eq!(m, UnitaryMatrix::beamsplitter_50_50().matrix().clone());
    }

    #[test]
    fn rejects_malformed_matrices() {
        assert!(matches!(
            parse_matrix_json("{\"d\": 2}"),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            parse_matrix_json(r#"{"d": 2, "matrix": [[[1, 0], [0, 0]]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_matrix_json(r#"{"d": 2, "matrix": [[[1, 0]], [[0, 0], [1, 0]]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_matrix_json(r#"{"d": 1, "matrix": [[[1, 0, 3]]]}"#),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn fixed_precision_floats() {
        assert_eq!(
            to_json_string(&[0.5, -0.0, 1e-300]).unwrap(),
            "[5.0000000000000000e-1,0.0000000000000000e0,1.0000000000000000e-300]"
        );
        let back: Vec<f64> = serde_json::from_str(&to_json_string(&[0.1f64]).unwrap()).unwrap();
        assert_eq!(back, vec![0.1]);
    }

    #[test]
    fn hom_distribution_formats() {
        let dist = output_distribution(
            &UnitaryMatrix::beamsplitter_50_50(),
            &OccupationVector::new(vec![1, 1]),
        )
        .unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&distribution_to_json(&dist).unwrap()).unwrap();
        assert_eq!(json["input"], serde_json::json!([1, 1]));
        let outcomes = json["outcomes"].as_array().unwrap();
        assert_eq!(outcomes.len(), 3);
        assert_eq!(outcomes[0]["state"], serde_json::json!([2, 0]));
        assert!((outcomes[0]["probability"].as_f64().unwrap() - 0.5).abs() < 1e-15);
        assert!(outcomes[1]["probability"].as_f64().unwrap() >= 0.0);

        let csv = distribution_to_csv(&dist).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "state;probability");
        assert!(lines[1].starts_with("|2,0⟩;5.00000000000000"));
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn key_order_is_fixed() {
        let dist =
            output_distribution(&UnitaryMatrix::identity(1), &OccupationVector::new(vec![1]))
                .unwrap();
        assert_eq!(
            distribution_to_json(&dist).unwrap(),
            r#"{"input":[1],"outcomes":[{"state":[1],"probability":1.0000000000000000e0,"amplitude":[1.0000000000000000e0,0.0000000000000000e0]}]}"#
        );
    }

    proptest! {
        #[test]
        fn matrix_json_round_trips_exactly(d in 1usize..6, seed in any::<u64>()) {
            let m = random_haar_unitary(d, seed).unwrap().matrix().clone();
            let text = matrix_to_json(&m).unwrap();
            prop_assert_eq!(parse_matrix_json(&text).unwrap(), m);
        }
    }
}
