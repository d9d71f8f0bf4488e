use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(script: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(posetcode_py::posetcode_py)(py);
        let globals = PyDict::new(py);
        globals.set_item("pc", module).unwrap();
        if let Err(e) = py.run(script, Some(&globals), None) {
            e.print(py);
            panic!("script failed");
        }
    });
}

#[test]
fn worked_example_through_python() {
    run(c"
g = pc.Code(2, [[0,0,1,1,0,1],[1,0,1,1,1,0],[1,1,0,0,0,0]])
p1 = pc.Poset(6, [(1,2),(3,4)])
d = pc.decompose(g, p1)
assert d.degree == 2, d
assert d.profile == [(1,1),(4,2),(1,1)]
back = pc.Decomposition.from_json(d.to_json())
assert back.profile == d.profile and back.witness == d.witness
matrix, witness, fixpoint = pc.canonicalize(g, p1)
assert fixpoint and len(matrix) == 3 and len(witness) == 6
p2 = pc.Poset.parse('poset n=6\\n1 2\\n3 4\\n4 5\\n')
assert pc.decompose(g, p2).degree == 3
");
}

#[test]
fn weights_radius_and_decoding() {
    run(c"
chain = pc.Poset.chain(3)
assert chain.weight([0,1,1]) == 3
assert chain.ideal([2]) == [1,2]
star = pc.Poset(4, [(1,4),(2,4),(3,4)])
c = pc.Code(2, [[1,0,0,1]])
assert pc.packing_radius(c, star) == 3
assert pc.radius_bounds(c, star) == (3, 3, 3)
assert c.min_distance(star) == 4
for kind in ['full', 'alg1', 'alg2']:
    assert pc.decode(c, star, [[1,0,0,1],[1,1,0,0]], decoder=kind) == [[1,0,0,1],[0,0,0,0]]
sizes = pc.table_plan(c, star)
assert sizes['full'] == 8
assert star.upper_neighbor().is_hierarchical()
assert star.is_coarser_than(star.upper_neighbor())
");
}

#[test]
fn errors_map_to_exceptions() {
    run(c"
try:
    pc.Poset(2, [(1,2),(2,1)])
    raise AssertionError('cycle accepted')
except ValueError:
    pass
try:
    pc.packing_radius(pc.Code(2, [[1,1,1]]), pc.Poset.antichain(3), budget=2)
    raise AssertionError('budget ignored')
except pc.BudgetExceeded:
    pass
try:
    pc.decompose(pc.Code(2, [[1,1]]), pc.Poset.chain(3))
    raise AssertionError('length mismatch accepted')
except ValueError:
    pass
assert all(failures == 0 for _, _, failures in pc.run_selftest(3))
");
}
