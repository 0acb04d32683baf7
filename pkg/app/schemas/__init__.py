from .base import *
from .results import *
from .run import *
