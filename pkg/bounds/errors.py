"""
bounds 异常定义
"""


class MixedSignatureError(ValueError):
    """混合符号域上 gamma 没有定义"""
