//! Structured sample grids on coordinate charts.

use super::FormsError;
use serde::{Deserialize, Serialize};

/// One coordinate axis: a range, a periodicity flag and a sample count.
/// Periodic axes sample `[min, max)` uniformly; non-periodic axes include
/// both endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub periodic: bool,
    pub samples: usize,
}

impl Axis {
    pub fn interval(name: &str, min: f64, max: f64, samples: usize) -> Self {
        Axis {
            name: name.into(),
            min,
            max,
            periodic: false,
            samples,
        }
    }

    pub fn circle(name: &str, samples: usize) -> Self {
        Axis {
            name: name.into(),
            min: 0.0,
            max: 1.0,
            periodic: true,
            samples,
        }
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        if self.periodic {
            self.min + (self.max - self.min) * i as f64 / self.samples as f64
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.samples - 1) as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chart {
    pub axes: Vec<Axis>,
}

impl Chart {
    pub fn new(axes: Vec<Axis>) -> Result<Self, FormsError> {
        for (i, a) in axes.iter().enumerate() {
            if a.samples < 2 {
                return Err(FormsError::BadResolution { axis: i });
            }
        }
        Ok(Chart { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn require_dim(&self, expected: usize) -> Result<(), FormsError> {
        if self.dim() != expected {
            return Err(FormsError::DimensionMismatch {
                expected,
                got: self.dim(),
            });
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.axes.iter().map(|a| a.samples).product()
    }

    /// Iterates over all grid nodes in row-major order.
    pub fn nodes(&self) -> NodeIter<'_> {
        NodeIter {
            chart: self,
            index: vec![0; self.dim()],
            done: self.dim() == 0,
        }
    }

    /// Whether the node index is interior on the given (non-periodic) axis.
    pub fn is_interior_on_axis(&self, index: &[usize], axis: usize) -> bool {
        let a = &self.axes[axis];
        a.periodic || (index[axis] > 0 && index[axis] + 1 < a.samples)
    }
}

pub struct NodeIter<'a> {
    chart: &'a Chart,
    index: Vec<usize>,
    done: bool,
}

impl Iterator for NodeIter<'_> {
    /// (multi-index, coordinates)
    type Item = (Vec<usize>, Vec<f64>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let coords: Vec<f64> = self
            .index
            .iter()
            .zip(&self.chart.axes)
            .map(|(&i, a)| a.coordinate(i))
            .collect();
        let item = (self.index.clone(), coords);
        // advance odometer
        let mut pos = self.chart.dim();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.index[pos] += 1;
            if self.index[pos] < self.chart.axes[pos].samples {
                break;
            }
            self.index[pos] = 0;
        }
        Some(item)
    }
}
