//! JSON channel description:
//! `{"label": str, "qubits_in": int, "qubits_out": int, "kraus": [[[[re, im], ...], ...], ...]}`
//! (Kraus operators, then rows, then entries).

use serde::{Deserialize, Serialize};

use super::QuantumChannel;
use crate::error::{Error, Result};
use crate::matkernel::ComplexMatrix;
use crate::{Real, C};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpecFile {
    pub label: String,
    pub qubits_in: usize,
    pub qubits_out: usize,
    pub kraus: Vec<Vec<Vec<[f64; 2]>>>,
}

impl ChannelSpecFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::ChannelFile(format!("parse error: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_channel<T: Real>(c: &QuantumChannel<T>) -> Self {
        let kraus = c
            .kraus()
            .iter()
            .map(|a| {
                (0..a.rows())
                    .map(|i| {
                        a.row(i)
                            .iter()
                            .map(|z| [z.re.to_f64_lossy(), z.im.to_f64_lossy()])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            label: c.label().to_string(),
            qubits_in: c.qubits_in(),
            qubits_out: c.qubits_out(),
            kraus,
        }
    }

    /// Builds the channel, rejecting shape and completeness violations.
    pub fn into_channel<T: Real>(self) -> Result<QuantumChannel<T>> {
        if self.qubits_in == 0 || self.qubits_out == 0 || self.qubits_in > 3 || self.qubits_out > 3
        {
            return Err(Error::ChannelFile(format!(
                "qubit counts ({}, {}) must be in 1..=3",
                self.qubits_in, self.qubits_out
            )));
        }
        if self.kraus.is_empty() {
            return Err(Error::ChannelFile("empty Kraus list".into()));
        }
        let (d_in, d_out) = (1usize << self.qubits_in, 1usize << self.qubits_out);
        let mut ops = Vec::with_capacity(self.kraus.len());
        for (k, op) in self.kraus.iter().enumerate() {
            if op.len() != d_out || op.iter().any(|row| row.len() != d_in) {
                return Err(Error::ChannelFile(format!(
                    "Kraus operator {k} is not {d_out}x{d_in}"
                )));
            }
            let data = op
                .iter()
                .flatten()
                .map(|&[re, im]| C::new(T::of(re), T::of(im)))
                .collect();
            ops.push(ComplexMatrix::new(d_out, d_in, data)?);
        }
        QuantumChannel::from_kraus_labeled(ops, self.qubits_in, self.qubits_out, self.label)
    }
}

impl<T: Real> QuantumChannel<T> {
    pub fn from_json(json: &str) -> Result<Self> {
        ChannelSpecFile::parse(json)?.into_channel()
    }

    pub fn to_json(&self) -> String {
        ChannelSpecFile::from_channel(self).to_json()
    }
}
