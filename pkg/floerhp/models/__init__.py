BUILTIN_KNOTS = [
    {
        "name": "trefoil-r",
        "alexander": [1, -1, 1],
        "two_bridge": [3, 1],
        "boundary_slopes": ["0/1", "6/1"],
        "irregular_slopes": [],
        "seminorm": [{"coeff": "1", "slope": "6/1"}],
        "E0": "0",
        "E1": "1/2",
        "small": True,
    },
    {
        "name": "trefoil-l",
        "alexander": [1, -1, 1],
        "two_bridge": [3, -1],
        "boundary_slopes": ["0/1", "-6/1"],
        "irregular_slopes": [],
        "seminorm": [{"coeff": "1", "slope": "-6/1"}],
        "E0": "0",
        "E1": "1/2",
        "small": True,
    },
]

KNOT_RECORD_REQUIRED_FIELDS = ("name", "alexander", "boundary_slopes", "seminorm", "E0", "E1", "small")
KNOT_RECORD_OPTIONAL_FIELDS = ("two_bridge", "irregular_slopes")

DEFAULT_SELFTEST_CONFIG = {
    "version": 1,
    "full": {
        "trefoil_max_p": 99,  # int, |p| bound of the trefoil oracle and HP# sweeps
        "trefoil_max_q": 20,  # int
        "consistency_max_p": 200,  # int, |p| bound of the census / closed-form sweep
        "consistency_max_q": 50,  # int
        "limit_q_values": [101, 103],  # list[int], large q used to check the limit invariants
    },
    "quick": {
        "trefoil_max_p": 50,
        "trefoil_max_q": 10,
        "consistency_max_p": 50,
        "consistency_max_q": 10,
        "limit_q_values": [101, 103],
    },
}
