"""Rule list learning on rigorously sized random samples.

The heavy lifting lives in the C++ extension ``_core``; this package
re-exports its surface. Train on a sample whose size certifies the result:

    import srl
    ds = srl.load_binary_csv("data.csv", "label")
    space = srl.SearchSpace(k=3, z=1, d=ds.d, alpha=0.01)
    result = srl.run(ds, space, epsilon=0.5, theta=0.025, delta=0.05, seed=1)
    print(result.certificate.guarantee)
"""

try:
    from srl._core import *  # noqa: F401,F403  (installed layout)
    from srl._core import __doc__ as _core_doc
except ImportError:  # pragma: no cover - build-tree layout
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__all__ = [
    "BinaryDataset",
    "SearchSpace",
    "RuleList",
    "SolverResult",
    "Plan",
    "Certificate",
    "TrainResult",
    "IoError",
    "FormatError",
    "GuardError",
    "load_binary_csv",
    "replicate",
    "draw_sample",
    "loss",
    "projection",
    "canonicalize",
    "model_from_json",
    "omega",
    "growth_upper",
    "vc_upper",
    "vc_lower",
    "deviation_upper",
    "opt_concentration",
    "check_sample_condition",
    "sample_size",
    "sample_size_analytic",
    "shatter_matrix",
    "shatter_dataset",
    "verify_shattering",
    "solve",
    "brute_force",
    "plan",
    "run",
    "evaluate_full",
]

__version__ = "0.1.0"
