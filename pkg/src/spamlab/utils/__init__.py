from .const import *
from .errors import *
from .loader import *
from .log import *
