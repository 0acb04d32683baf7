"""
base.py

Output schemas shared by every command.
"""

from pydantic import BaseModel, ConfigDict

from app.core.utils.helpers import complex_parts


class BaseSchema(BaseModel):
    """ Base schema to inherit configuration from for all input and output forms"""
    model_config = ConfigDict(str_strip_whitespace=True)


class ComplexOut(BaseSchema):
    """ A complex number as two decimal strings """
    re: str
    im: str

    @classmethod
    def from_mp(cls, value, digits: int = 30) -> "ComplexOut":
        re, im = complex_parts(value, digits)
        return cls(re=re, im=im)
