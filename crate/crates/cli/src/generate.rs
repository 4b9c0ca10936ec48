//! `generate` subcommand: constructions in the standard JSON formats, each
//! with a provenance string.

use helly_core::constructions::{gen_torus_grid_system, GeometricCircleConfig, PolynomialComatching};
use helly_core::{
    gen_circle_config, gen_cycle_complex, gen_cycle_sharpness, gen_good_join_complex,
    gen_hamming_system, gen_poly_comatching, gen_simplex, gen_torus_grid_complex,
};
use serde::Serialize;
use serde_json::Value;

use crate::error::CliResult;

#[derive(Debug, Clone, clap::Subcommand)]
pub enum Construction {
    /// Cyclic family with a disjoint-pair structure (set system).
    CycleSharpness {
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Radius-t Hamming balls over {0..q-1}^n (set system).
    Hamming {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Four circles and four points in the plane, each point on three circles.
    Circles,
    /// Polynomials of bounded degree with a prescribed zero pattern.
    Poly {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
    /// Torus grid complex with one facet per s×s block.
    Torus {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
    },
    /// Torus grid complex converted into a set system.
    TorusSystem {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
    },
    /// d-fold join of the 4×4 torus grid complex.
    GoodJoin {
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Full simplex on n vertices.
    Simplex {
        #[arg(long)]
        n: usize,
    },
    /// Cycle graph on n vertices.
    Cycle {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Serialize)]
struct CircleOutput {
    provenance: String,
    configuration: GeometricCircleConfig,
    system: Value,
}

#[derive(Serialize)]
struct PolyOutput {
    provenance: String,
    #[serde(flatten)]
    comatching: PolynomialComatching,
}

fn with_provenance<T: Serialize>(value: T, provenance: String) -> CliResult<Value> {
    let mut v = serde_json::to_value(value).map_err(anyhow::Error::from)?;
    if let Value::Object(map) = &mut v {
        map.insert("provenance".into(), Value::String(provenance));
    }
    Ok(v)
}

pub fn generate(c: &Construction, seed: u64) -> CliResult<Value> {
    Ok(match *c {
        Construction::CycleSharpness { m } => with_provenance(
            gen_cycle_sharpness(m)?.to_json_value(),
            format!("cyclic sharpness family, M = {m}: disjoint pairs {{2i-1, 2i}} and shifted pairs {{2i, 2i+1}} removed from 1..2M"),
        )?,
        Construction::Hamming { n, t, q } => with_provenance(
            gen_hamming_system(n, t, q)?.to_json_value(),
            format!("Hamming balls of radius {t} in {{0..{}}}^{n}", q - 1),
        )?,
        Construction::Circles => {
            let (configuration, system) = gen_circle_config()?;
            serde_json::to_value(CircleOutput {
                provenance: "unit circles through the centre of an equilateral triangle, centred at its vertices, plus its circumcircle; incidence extracted at tolerance".into(),
                configuration,
                system: with_provenance(system.to_json_value(), "incidence pattern of the circle configuration".into())?,
            })
            .map_err(anyhow::Error::from)?
        }
        Construction::Poly { d, degree } => serde_json::to_value(PolyOutput {
            provenance: format!(
                "Lagrange basis of polynomials in {d} variables of degree <= {degree} at sampled integer points (seed {seed})"
            ),
            comatching: gen_poly_comatching(d, degree, seed)?,
        })
        .map_err(anyhow::Error::from)?,
        Construction::Torus { k, s } => with_provenance(
            gen_torus_grid_complex(k, s)?.to_json_value(),
            format!("{k}x{k} torus grid, one facet per {s}x{s} block of cells"),
        )?,
        Construction::TorusSystem { k, s } => with_provenance(
            gen_torus_grid_system(k, s)?.to_json_value(),
            format!("set system whose nerve is the {k}x{k} torus grid complex with {s}x{s} blocks"),
        )?,
        Construction::GoodJoin { d } => with_provenance(
            gen_good_join_complex(d)?.to_json_value(),
            format!("{d}-fold join of the 4x4 torus grid complex"),
        )?,
        Construction::Simplex { n } => with_provenance(
            gen_simplex(n)?.to_json_value(),
            format!("full simplex on {n} vertices"),
        )?,
        Construction::Cycle { n } => with_provenance(
            gen_cycle_complex(n)?.to_json_value(),
            format!("cycle graph on {n} vertices"),
        )?,
    })
}
