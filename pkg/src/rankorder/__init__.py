__version__ = "0.1.0"
__version_info__ = tuple(__version__.split("."))


from .fit import compare_models as compare_models
from .ingest import parse_csv as parse_csv
from .ingest import rank_raw as rank_raw
from .models import ModelTag as ModelTag
from .models import curve as curve
from .models import evaluate as evaluate
from .series import RankedSeries as RankedSeries
