//! Depth and size of framework circuits as the input arity grows.

use std::io::Write;

use crate::error::Result;
use crate::framework::{build_framework_circuit, NeuronKind, NeuronModel};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthRow {
    pub neuron: NeuronKind,
    pub m: usize,
    pub depth: usize,
    pub size: usize,
}

/// Builds the framework circuit for each arity with all-zero input and
/// weight (BVQN: all-ones) and records its depth and size.
pub fn circuit_growth<T: Scalar, N: NeuronModel<T> + ?Sized>(neuron: &N, m_values: &[usize]) -> Result<Vec<GrowthRow>> {
    let fill = if neuron.kind() == NeuronKind::Bvqn { T::one() } else { T::zero() };
    m_values
        .iter()
        .map(|&m| {
            let v = vec![fill; m];
            let c = build_framework_circuit(neuron, &v, &v)?;
            Ok(GrowthRow { neuron: neuron.kind(), m, depth: c.depth(), size: c.size() })
        })
        .collect()
}

/// Columns `neuron,m,depth,size`.
pub fn write_growth_csv<W: Write>(w: W, rows: &[GrowthRow]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["neuron", "m", "depth", "size"])?;
    for r in rows {
        wr.write_record([r.neuron.name().to_string(), r.m.to_string(), r.depth.to_string(), r.size.to_string()])?;
    }
    wr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neurons::{Neuron, PcdqnParams};

    #[test]
    fn pcdqn_expanded_depth_is_eight() {
        let n = Neuron::Pcdqn { params: PcdqnParams::new(0.5, 1.0).unwrap(), fused: false };
        let rows = circuit_growth::<f64, _>(&n, &[2, 4, 8]).unwrap();
        assert!(rows.iter().all(|r| r.depth == 8));
        assert_eq!(rows.iter().map(|r| r.size).collect::<Vec<_>>(), vec![14, 26, 50]);
    }

    #[test]
    fn cdqn_size_is_affine() {
        let rows = circuit_growth::<f64, _>(&Neuron::Cdqn, &[1, 2, 3, 7]).unwrap();
        for r in rows {
            assert_eq!(r.size, 5 * r.m + 2);
            assert_eq!(r.depth, 7);
        }
    }

    #[test]
    fn cvqn_grows() {
        let rows = circuit_growth::<f64, _>(&Neuron::Cvqn { pruned: false }, &[2, 4, 8]).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].size > w[0].size);
            assert!(w[1].depth > w[0].depth);
        }
        assert!(rows.iter().all(|r| r.size >= r.m));
        assert!(circuit_growth::<f64, _>(&Neuron::Cvqn { pruned: false }, &[3]).is_err());
    }

    #[test]
    fn csv_schema() {
        let rows = circuit_growth::<f64, _>(&Neuron::Cdqn, &[2]).unwrap();
        let mut buf = Vec::new();
        write_growth_csv(&mut buf, &rows).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "neuron,m,depth,size\ncdqn,2,7,12\n");
    }
}
