from .bench import *
from .corpus import *
from .features import *
from .frontend import *
from .metrics import *
from .models import *
from .numeric import *
from .records import *
from .textprep import *
from .utils import *
