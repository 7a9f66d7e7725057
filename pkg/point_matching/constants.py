"""
Constants and reference data for the point_matching application.
"""

# Exit codes by error family
EXIT_CODES = {
    "OK": 0,
    "CONFIG": 1,
    "CONVERGENCE": 2,
    "PRECISION": 3,
    "CATALOG": 4,
    "IO": 5,
}

# Default run settings
DEFAULT_DIGITS = 30
DEFAULT_GRID_RESOLUTION = 64
DEFAULT_CHECKPOINT_NAME = "{shape}_{class_id}_{bc}_{index}.ckpt"
DEFAULT_RESULT_NAME = "{shape}_{class_id}_{bc}_{index}.json"
WAVELENGTH_FRACTION = "0.5"

# L-shape lowest symmetric Dirichlet eigenvalue, N -> λ^[N] with the
# fhm distribution (derivative rows at V2, V3; equal-spaced value points)
LSHAPE_FHM_VALUES = {
    4: "9.658161723",
    6: "9.639624491",
    8: "9.6397266319",
    10: "9.63972370221",
    12: "9.639723854826",
    14: "9.6397238430369",
    16: "9.63972384412442",
    18: "9.639723844010281",
    20: "9.6397238440233611",
    22: "9.63972384402175875",
    24: "9.639723844021965466",
    26: "9.639723844021937668",
    28: "9.6397238440219415358",
    30: "9.6397238440219409820",
    32: "9.639723844021941063271",
}

# Published table values for the same N (ten significant digits)
FHM_PUBLISHED = {
    4: "9.658161723",
    6: "9.639624491",
    8: "9.639726632",
    10: "9.639723703",
    12: "9.639723855",
    14: "9.639723844",
    16: "9.639723844",
    18: "9.639723845",
    20: "9.639723845",
    22: "9.639723845",
    24: "9.639723844",
    26: "9.639723846",
}

# Eigenvalues of the whole shape, (shape, boundary kind, n) -> decimal
REFERENCE_EIGENVALUES = {
    ("lshape", "dirichlet", 1):
        "9.639723844021941052711459262364823156267289525821906456109579700564035647863370390722873165008796788",
    ("cutsquare", "dirichlet", 1): "35.631519517191723095205486142077656984096719323704",
    ("cutsquare", "dirichlet", 2): "54.193108444246291974119785856470407689147834351054",
    ("cutsquare", "dirichlet", 3): "73.633308125603834594838286745669500260837320383040",
    ("cutsquare", "neumann", 1): "4.8725276926560441293995845626382232443560835019173",
    ("cutsquare", "neumann", 2): "11.689012467975646418560663032887456850668757229760",
    ("cutsquare", "neumann", 3): "18.413553664057643462436578641928746549080932393352",
    ("star", "dirichlet", 1): "38.164677849021956120706440125449093027617878759405",
    ("star", "dirichlet", 2): "91.522976600087650110187405505944955784487274004759",
    ("star", "neumann", 1): "8.1427909641219464723347929848146929523024540073157",
    ("star", "neumann", 2): "12.398768327444927056016505182574514120246307375894",
}

# Lowest Dirichlet eigenvalue of the area-π regular σ-gon
POLYGON_AREA_PI = {
    5: "6.0221379320426338782980087100542429670053053404485",
    6: "5.9174178316136612156885745768389615450082860040929",
    7: "5.8664493126559858577124749417588410842427349136980",
    8: "5.8384914335924428505166403795638157848367571520259",
    9: "5.8218268022702657317355464437169459216717867646205",
    10: "5.8112603592191160227888164688111646234421581749002",
    126: "5.7831998639169811697955997275",
    127: "5.7831995381236804121745520138",
    128: "5.78319922243209895698523832013",
    129: "5.78319891645372682901545245421",
    130: "5.78319861981784749432269771828",
}

# Unit-edge values
POLYGON_UNIT_EDGE = {
    5: "10.996427084559806648",
    6: "7.1553391339260551282",
}

# j_{0,1}², the σ -> ∞ limit of the area-π polygons
J01_SQUARED = "5.783185962946784521175995758456"

# Published bounds used by the acceptance runs
LSHAPE_BOUND_N12_N14 = "9.6397238_{43}^{55}"
LSHAPE_BOUND_N20_N22 = "9.63972384402_{17}^{34}"
ASYMPTOTIC_256_PREFIX = "5.78318762036894"
