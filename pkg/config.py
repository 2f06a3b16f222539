{
    "KATZ": {
        "alpha_scale": 0.85,
        "normalize": True,
        "tol": 1e-10,
        "max_iters": 10000
    },
    "SPECTRAL": {
        "tol": 1e-8,
        "max_iters": 10000
    },
    "REPORT": {
        "top": 20
    },
    "COLORS": {
        "protein": "blue",
        "drug": "green",
        "disease": "red",
        "taxonomy": "orange"
    }
}
