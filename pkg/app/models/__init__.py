from .rational import *
from .series import *
from .saddle import *
from .asymptotic import *
from .paths import *
