# Double precision
EPS = 1e-9  # degrees, used for boundary tests on polygon edges

# Earth model for centroid distances
EARTH_RADIUS_KM = 6371.0  # km

# All timestamps are interpreted in China Standard Time
CST_OFFSET_HOURS = 8  # h
SECONDS_PER_DAY = 86400  # s

# Administrative levels, from the highest to the most specific
PROVINCE = "province"
PREFECTURE_CITY = "prefecture_city"
DISTRICT = "district"
ADMIN_LEVELS = [PROVINCE, PREFECTURE_CITY, DISTRICT]
# Rank used to order levels: higher administrative level has smaller rank
ADMIN_RANK = {PROVINCE: 0, PREFECTURE_CITY: 1, DISTRICT: 2}

# City tiers, largest first
TIERS = ["T1", "NewT1", "T2", "T3", "T4", "T5"]

# Job search query filtering ("recruitment", "job hunting")
DEFAULT_JOB_KEYWORDS = [u"招聘", u"求职"]

# HITS
HITS_TOL = 1e-10
HITS_MAX_ITER = 1000

# Louvain
LOUVAIN_RESOLUTION = 1.0
LOUVAIN_SEED = 0
LOUVAIN_MIN_GAIN = 1e-9  # minimum modularity gain between levels
LOUVAIN_MOVE_EPS = 1e-12  # minimum gain for a single node move

# Keyword dictionary
DICTIONARY_MIN_FREQ = 1000  # occurrences
DICTIONARY_TOP_DROP = 50  # most frequent words dropped
TOP_KEYWORDS = 10  # keywords shown per cluster for manual labelling

# KMeans
KMEANS_MAX_ITER = 300
KMEANS_TOL = 1e-8
KMEANS_SEED = 0
KMEANS_OVERSAMPLING = 2.0  # candidates drawn per round, as a multiple of k
KMEANS_SEEDING_ROUNDS = 5

# Demand
UNCLASSIFIED = "unclassified"
GROUPINGS = ["tier", "city", "region", "country"]
COUNTRY_GROUP = "ALL"

# Correlations
CORRELATION_METHODS = ["pearson", "spearman", "kendall"]
MIN_CORRELATION_SAMPLES = 3

# Pipeline
STAGES = ["ingest", "graph", "metrics", "communities", "demand", "correlate", "report"]
REPORT_FORMATS = ["csv", "json"]

# Synthetic scenarios
SYNTH_GRID_ORIGIN = (20.0, 100.0)  # (lat, lon) degrees of the lower-left grid corner
SYNTH_CELL_DEG = 0.5  # degrees, side of a city square
SYNTH_MIN_COMMUNITY_RATIO = 5.0  # intra-community over inter-community intensity
SYNTH_DAY_START_HOUR = 8  # h, CST
SYNTH_DAY_END_HOUR = 20  # h, CST
SYNTH_TITLE_POOL_WORDS = 3  # category keywords per generated title
