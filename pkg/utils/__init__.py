from .logger import Logger
from .utils import *
