"""CLI invocations with golden stdout in tests/golden/<name>.txt."""

CASES = {
    "reduce_541": ["reduce", "5", "4", "1"],
    "reduce_101": ["reduce", "1", "0", "1"],
    "reduce_322": ["reduce", "3", "2", "2"],
    "reduce_json": ["reduce", "5", "4", "1", "--json"],
    "classgroup_4": ["classgroup", "--", "-4"],
    "classgroup_20": ["classgroup", "--", "-20"],
    "classgroup_108": ["classgroup", "--", "-108"],
    "classgroup_108_json": ["--json", "classgroup", "--", "-108"],
    "decide_45": ["decide", "1", "0", "1", "45", "--certificate"],
    "decide_323_2": ["decide", "3", "2", "3", "2"],
    "decide_427_63": ["decide", "4", "2", "7", "63", "--certificate"],
    "decide_427_63_explain": ["decide", "4", "2", "7", "63", "--explain", "--oracle-check"],
    "decide_json": ["decide", "2", "2", "3", "42", "--certificate", "--json"],
    "ideal_norm": ["ideal", "norm", "-20:1:2:2"],
    "ideal_mul_conj": ["ideal", "mul", "-20:1/1:2:2", "-20:1/1:2:-2"],
    "ideal_conj": ["ideal", "conj", "-20:1/1:2:2"],
    "ideal_inv": ["ideal", "inv", "-20:1/1:2:2"],
    "ideal_extend": ["ideal", "extend", "-32:1/1:3:2", "--to", "-8"],
    "ideal_contract": ["ideal", "contract", "-8:1/1:3:2", "--to", "-32"],
    "ideal_decompose": ["ideal", "decompose", "-32:1/1:12:-4"],
    "ideal_decompose_json": ["ideal", "decompose", "-32:1/1:12:-4", "--json"],
    "pi_32": ["pi", "--", "-32", "-8", "3", "2", "3"],
    "pi_108": ["pi", "--", "-108", "-27", "4", "2", "7"],
    "pi_20": ["pi", "--", "-20", "-20", "2", "2", "3"],
    "pi_json": ["pi", "--json", "--", "-64", "-4", "4", "4", "5"],
    "examples_11": ["examples", "1.1", "--max", "10000"],
    "examples_13": ["examples", "1.3", "--max", "5000"],
    "examples_82": ["examples", "8.2", "--max", "5000"],
    "examples_json": ["examples", "8.5", "--max", "300", "--json"],
}
