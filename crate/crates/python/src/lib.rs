//! Python bindings for the `geomcut` fence solver.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::geomcut as core;
use core::cut::DEFAULT_ORACLE_BUDGET;
use core::error::Error;
use core::geom::{Point, Polygon};
use core::io::{format_rational, parse_rational};

fn to_py(e: Error) -> PyErr {
    match core::cli::exit_code(&e) {
        3 => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A coordinate given as str (decimal or "p/q"), int, or float (taken exactly).
fn coordinate(v: &Bound<'_, PyAny>) -> PyResult<core::geom::Rational> {
    if let Ok(s) = v.extract::<String>() {
        return parse_rational(&s).map_err(to_py);
    }
    if let Ok(i) = v.extract::<i64>() {
        return Ok(core::geom::Rational::from_integer(i.into()));
    }
    let f: f64 = v.extract()?;
    core::geom::Rational::from_float(f)
        .ok_or_else(|| PyValueError::new_err(format!("coordinate {f} is not finite")))
}

fn point_strings(p: &Point) -> (String, String) {
    (format_rational(&p.x), format_rational(&p.y))
}

/// Colored polygons. `objects` is a list of `(color, [(x, y), ...])`.
#[pyclass(name = "Instance", frozen)]
struct PyInstance {
    inner: core::geom::Instance,
}

#[pymethods]
impl PyInstance {
    #[new]
    fn new(num_colors: usize, objects: Vec<(usize, Vec<(Bound<'_, PyAny>, Bound<'_, PyAny>)>)>) -> PyResult<Self> {
        let mut polys = Vec::with_capacity(objects.len());
        for (color, verts) in objects {
            if color >= num_colors {
                return Err(PyValueError::new_err(format!(
                    "color {color} outside 0..{num_colors}"
                )));
            }
            let pts = verts
                .iter()
                .map(|(x, y)| Ok(Point::new(coordinate(x)?, coordinate(y)?)))
                .collect::<PyResult<Vec<Point>>>()?;
            polys.push(Polygon::new(pts, color));
        }
        Ok(PyInstance {
            inner: core::geom::Instance::new(num_colors, polys),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        core::io::parse_instance(text.as_bytes())
            .map(|inner| PyInstance { inner })
            .map_err(to_py)
    }

    fn to_json(&self) -> String {
        String::from_utf8(core::io::serialize_instance(&self.inner)).expect("utf-8 json")
    }

    #[getter]
    fn num_colors(&self) -> usize {
        self.inner.num_colors
    }

    #[getter]
    fn num_objects(&self) -> usize {
        self.inner.objects.len()
    }

    #[getter]
    fn num_corners(&self) -> usize {
        self.inner.num_corners()
    }

    /// `(color, [(x, y), ...])` per object, coordinates as exact strings.
    fn objects(&self) -> Vec<(usize, Vec<(String, String)>)> {
        self.inner
            .objects
            .iter()
            .map(|o| (o.color(), o.vertices().iter().map(point_strings).collect()))
            .collect()
    }

    /// Problems found in the instance; empty when valid.
    fn validate(&self) -> Vec<String> {
        core::geom::validate_instance(&self.inner)
            .violations
            .iter()
            .map(|v| match v.other {
                Some(o) => format!("{:?}: objects {} and {}", v.kind, v.object, o),
                None => format!("{:?}: object {}", v.kind, v.object),
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(num_colors={}, objects={})",
            self.inner.num_colors,
            self.inner.objects.len()
        )
    }
}

#[pyclass(name = "Fence", frozen)]
struct PyFence {
    inner: core::fence::Fence,
}

#[pymethods]
impl PyFence {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        core::io::parse_fence(text.as_bytes())
            .map(|inner| PyFence { inner })
            .map_err(to_py)
    }

    fn to_json(&self) -> String {
        String::from_utf8(core::io::serialize_fence(&self.inner)).expect("utf-8 json")
    }

    #[getter]
    fn total_length(&self) -> f64 {
        self.inner.total_length
    }

    /// Segments as float coordinate pairs.
    fn segments(&self) -> Vec<((f64, f64), (f64, f64))> {
        self.inner
            .segments
            .iter()
            .map(|s| (s.a.to_f64(), s.b.to_f64()))
            .collect()
    }

    /// Segments with exact coordinates as strings.
    fn exact_segments(&self) -> Vec<((String, String), (String, String))> {
        self.inner
            .segments
            .iter()
            .map(|s| (point_strings(&s.a), point_strings(&s.b)))
            .collect()
    }

    fn is_closed(&self) -> bool {
        self.inner.is_closed()
    }

    fn __len__(&self) -> usize {
        self.inner.segments.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Fence(total_length={:.9}, segments={})",
            self.inner.total_length,
            self.inner.segments.len()
        )
    }
}

/// Solves an instance. `method` is one of auto, exact2, isolation, bruteforce, exact.
#[pyfunction]
#[pyo3(signature = (instance, method = "auto", oracle_budget = None))]
fn solve(py: Python<'_>, instance: &PyInstance, method: &str, oracle_budget: Option<u128>) -> PyResult<PyFence> {
    let method: core::solver::Method = method.parse().map_err(PyValueError::new_err)?;
    let budget = oracle_budget.unwrap_or(DEFAULT_ORACLE_BUDGET);
    let inst = instance.inner.clone();
    let sol = py
        .detach(move || core::solver::solve(&inst, method, budget))
        .map_err(to_py)?;
    Ok(PyFence { inner: sol.fence })
}

/// Returns `(valid, [(object, object), ...])`.
#[pyfunction]
fn validate_fence(instance: &PyInstance, fence: &PyFence) -> (bool, Vec<(usize, usize)>) {
    let r = core::fence::validate_fence(&instance.inner, &fence.inner);
    (r.valid, r.violations)
}

#[pyfunction]
#[pyo3(signature = (instance, fence = None))]
fn render_svg(instance: &PyInstance, fence: Option<&PyFence>) -> String {
    core::fence::render_svg(&instance.inner, fence.map(|f| &f.inner))
}

#[pyfunction]
#[pyo3(signature = (grid_k = 1, thickness = 0.01))]
fn gen_lower_bound(grid_k: usize, thickness: f64) -> PyResult<PyInstance> {
    core::generators::gen_lower_bound(grid_k, thickness)
        .map(|inner| PyInstance { inner })
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (seed = 0, num_objects = 3, num_colors = 2, coordinate_range = 12))]
fn gen_random(seed: u64, num_objects: usize, num_colors: usize, coordinate_range: i64) -> PyResult<PyInstance> {
    let params = core::generators::GeneratorParams {
        seed,
        num_objects,
        num_colors,
        coordinate_range,
        ..Default::default()
    };
    core::generators::gen_random(&params)
        .map(|inner| PyInstance { inner })
        .map_err(to_py)
}

/// Minimum duplication on a tree expression such as `"(L:1,L:1):1"`.
/// Returns `(cost, [(parent, child, length), ...])` for the doubled edges.
#[pyfunction]
#[pyo3(signature = (tree, exhaustive = false))]
fn min_duplication(tree: &str, exhaustive: bool) -> PyResult<(f64, Vec<(usize, usize, f64)>)> {
    let t = core::steiner::parse_tree(tree).map_err(to_py)?;
    let r = if exhaustive {
        core::steiner::brute_force_duplication(&t).map_err(to_py)?
    } else {
        core::steiner::min_duplication(&t)
    };
    Ok((r.cost, r.duplicated.iter().map(|&e| t.edges()[e]).collect()))
}

/// Sizes of the free-segment set, arrangement and dual graph.
#[pyfunction]
fn stats<'py>(py: Python<'py>, instance: &PyInstance) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let inst = &instance.inner;
    d.set_item("objects", inst.objects.len())?;
    d.set_item("colors", inst.num_colors)?;
    d.set_item("corners", inst.num_corners())?;
    if !inst.objects.is_empty() {
        let p = core::solver::prepare(inst).map_err(to_py)?;
        d.set_item("free_segments", p.segments.len())?;
        d.set_item("vertices", p.arrangement.vertices.len())?;
        d.set_item("edges", p.arrangement.edges.len())?;
        d.set_item("faces", p.arrangement.faces.len())?;
        d.set_item("dual_nodes", p.dual.num_nodes)?;
        d.set_item("dual_edges", p.dual.edges.len())?;
    }
    Ok(d)
}

#[pymodule]
fn geomcut(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PyFence>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(validate_fence, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(gen_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    m.add_function(wrap_pyfunction!(min_duplication, m)?)?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    Ok(())
}
