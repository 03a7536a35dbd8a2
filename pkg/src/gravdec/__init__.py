# Makes python treat src/gravdec as a package
__version__ = "1.0.0"
