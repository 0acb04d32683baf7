from .ratcore import *
from .pseries import *
from .saddle import *
from .asymp import *
from .descent import *
