use super::grid::{cfl_check, Field, Grid1D};
use super::scheme::{advance, check_level};
use crate::error::{Error, Result};
use crate::scenario::ScenarioConfig;

/// Trapezoidal quadrature of the field over the grid.
pub fn total_capital(field: &Field, grid: &Grid1D) -> f64 {
    let v = &field.values;
    match v.len() {
        0 => 0.0,
        1 => 0.0,
        n => {
            let inner: f64 = v[1..n - 1].iter().sum();
            grid.dx() * (0.5 * v[0] + inner + 0.5 * v[n - 1])
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub time: f64,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub total: f64,
}

impl Summary {
    pub fn of(field: &Field, grid: &Grid1D) -> Self {
        Summary {
            time: field.time,
            min: field.min(),
            max: field.max(),
            mean: field.mean(),
            total: total_capital(field, grid),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub field: Field,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativeEvent {
    pub step: usize,
    pub time: f64,
    pub node: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub cfl_ratio: f64,
    pub first_negative: Option<NegativeEvent>,
    /// Largest |k| over every time level, not just retained ones.
    pub max_abs: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSeries {
    pub grid: Grid1D,
    pub snapshots: Vec<Snapshot>,
    pub diagnostics: Diagnostics,
}

impl SnapshotSeries {
    pub fn first(&self) -> &Snapshot {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &Snapshot {
        self.snapshots
            .last()
            .expect("series holds at least the initial field")
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.snapshots.iter().map(|s| s.field.time)
    }

    /// Retained snapshot whose time is closest to `t`.
    pub fn at_time(&self, t: f64) -> &Snapshot {
        self.snapshots
            .iter()
            .min_by(|a, b| {
                (a.field.time - t)
                    .abs()
                    .total_cmp(&(b.field.time - t).abs())
            })
            .expect("series holds at least the initial field")
    }
}

pub fn initial_field(config: &ScenarioConfig) -> Result<Field> {
    let grid = &config.grid;
    let values: Vec<f64> = grid
        .nodes()
        .map(|x| config.initial.eval(x, grid.length()))
        .collect::<Result<_>>()?;
    Ok(Field::new(values, 0.0))
}

/// Runs a scenario to its final time, keeping every `snapshot_stride`-th
/// level plus the final one. Bit-reproducible for a given config.
pub fn run(config: &ScenarioConfig) -> Result<SnapshotSeries> {
    config.validate()?;
    let grid = config.grid;
    let tg = config.time;
    let cfl_ratio = cfl_check(&grid, &tg)?;

    let mut cur = initial_field(config)?;
    check_level(&cur, 0, &config.opts)?;

    let mut diagnostics = Diagnostics {
        cfl_ratio,
        first_negative: None,
        max_abs: cur.max_abs(),
        steps: tg.n_steps(),
    };
    let note_negative = |field: &Field, step: usize, diag: &mut Diagnostics| {
        if diag.first_negative.is_none() {
            if let Some((node, &value)) = field.values.iter().enumerate().find(|(_, v)| **v < 0.0) {
                diag.first_negative = Some(NegativeEvent {
                    step,
                    time: field.time,
                    node,
                    value,
                });
            }
        }
    };
    note_negative(&cur, 0, &mut diagnostics);

    let stride = config.snapshot_stride.max(1);
    let mut snapshots = Vec::with_capacity(tg.n_steps() / stride + 2);
    snapshots.push(Snapshot {
        summary: Summary::of(&cur, &grid),
        field: cur.clone(),
    });

    let mut next = Field::new(vec![0.0; grid.n_nodes()], 0.0);
    for n in 0..tg.n_steps() {
        advance(
            &cur.values,
            &mut next.values,
            &grid,
            tg.dt(),
            cur.time,
            &config.econ,
            &config.bc,
            &config.opts,
        );
        next.time = tg.time(n + 1);
        check_level(&next, n + 1, &config.opts)?;
        note_negative(&next, n + 1, &mut diagnostics);
        diagnostics.max_abs = diagnostics.max_abs.max(next.max_abs());
        std::mem::swap(&mut cur, &mut next);

        if (n + 1) % stride == 0 || n + 1 == tg.n_steps() {
            snapshots.push(Snapshot {
                summary: Summary::of(&cur, &grid),
                field: cur.clone(),
            });
        }
    }

    Ok(SnapshotSeries {
        grid,
        snapshots,
        diagnostics,
    })
}

/// Terminal field only, without retaining snapshots.
pub(crate) fn run_to_end(config: &ScenarioConfig) -> Result<Field> {
    let mut c = config.clone();
    c.snapshot_stride = config.time.n_steps().max(1);
    let series = run(&c)?;
    series
        .snapshots
        .into_iter()
        .last()
        .map(|s| s.field)
        .ok_or_else(|| Error::Contract("run produced no snapshots".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_examples() {
        let g = Grid1D::new(100.0, 100).unwrap();
        assert_eq!(total_capital(&Field::uniform(&g, 100.0), &g), 10000.0);
        let linear = Field::new(g.nodes().collect(), 0.0);
        assert_eq!(total_capital(&linear, &g), 5000.0);
    }

    #[test]
    fn trapezoid_gaussian_golden() {
        // N = 100 trapezoid sum of 100 exp(-(x-50)^2/1000), from an
        // independent numpy evaluation
        let g = Grid1D::new(100.0, 100).unwrap();
        let f = Field::new(
            g.nodes()
                .map(|x| 100.0 * (-(x - 50.0) * (x - 50.0) / 1000.0).exp())
                .collect(),
            0.0,
        );
        assert!((total_capital(&f, &g) - 5_462.782_918_643_166).abs() < 1e-9);
    }
}
