# Data models and schemas

from src.models.graph_models import *
from src.models.coxeter_models import *
from src.models.subdivision_models import *
from src.models.extremal_models import *
from src.models.geometry_models import *
